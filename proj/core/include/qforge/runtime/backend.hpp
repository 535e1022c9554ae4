// Copyright 2026 The qasm-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qforge::runtime {

using QubitId = std::uint64_t;

enum class Segment { None, Compute, Uncompute };

struct GateRecord {
  std::string gate;
  std::vector<QubitId> qubits;
  std::vector<double> params;
  Segment segment = Segment::None;

  friend bool operator==(const GateRecord &, const GateRecord &) = default;
};

struct BackendStats {
  std::uint64_t total_gates = 0;
  std::map<std::string, std::uint64_t> per_gate;
  /// Executed cnot and crz gates.
  std::uint64_t controlled_ops_cx_crz = 0;

  void count(const std::string &gate);
};

/// Key-sorted JSON report.
std::string stats_json(const BackendStats &stats, std::uint64_t shots, std::uint64_t seed);

/// Executes flattened gates. Qubit ids are allocated by the runtime and never reused in a shot.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual void allocate(QubitId q) = 0;
  virtual void release(QubitId q) = 0;
  virtual void apply(const GateRecord &gate) = 0;
  virtual bool measure(QubitId q) = 0;
  virtual void reset(QubitId q) = 0;
  /// Drops all qubits before a whole-program rerun.
  virtual void begin_shot() = 0;
};

}  // namespace qforge::runtime
