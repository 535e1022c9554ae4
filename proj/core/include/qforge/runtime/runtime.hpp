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
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qforge/runtime/backend.hpp"

namespace qforge::runtime {

using ArrayId = std::uint64_t;

enum class RegionKind { Ctrl, Adj, Pow };

struct RuntimeOptions {
  /// Counted cost of the ccx decomposition (5, 6, 7), or 0 to execute ccx natively.
  int ccx_cost = 5;
};

/// Implements the runtime symbol set on top of a backend. Gates issued inside an open
/// ctrl/adj/pow region are collected and synthesized when the region ends.
class Runtime {
 public:
  explicit Runtime(Backend &backend, RuntimeOptions options = {});

  ArrayId allocate_array(std::int64_t n);
  QubitId element(ArrayId a, std::int64_t index);
  /// Elements start, start+step, ... up to and including `stop`.
  ArrayId slice(ArrayId a, std::int64_t start, std::int64_t step, std::int64_t stop);
  ArrayId concat(ArrayId a, ArrayId b);
  std::int64_t size(ArrayId a) const;
  void release_array(ArrayId a);

  void gate(std::string_view name, std::vector<QubitId> qubits, std::vector<double> params);
  bool measure(QubitId q);
  void reset(QubitId q);

  void start_region(RegionKind kind);
  void end_ctrl_region(QubitId ctrl);
  void end_adj_region();
  void end_pow_region(std::int64_t k);

  void mark(Segment s);
  void unmark(Segment s);

  void print(std::string_view line);
  void set_output(std::ostream *out) { out_ = out; }
  /// Checks that no region or segment is still open.
  void finalize();

  /// Forgets all handles for a whole-program rerun; statistics accumulate.
  void begin_shot();

  const BackendStats &stats() const { return stats_; }
  std::size_t open_regions() const { return frames_.size(); }

 private:
  struct Array {
    std::vector<QubitId> qubits;
    bool owner = false;
    bool alive = true;
  };
  struct Frame {
    RegionKind kind;
    std::size_t segment_base;
    std::vector<GateRecord> records;
  };

  const Array &array(ArrayId a) const;
  void check_live(QubitId q) const;
  Segment segment_for_frame() const;
  void emit(GateRecord record);
  void execute(const GateRecord &record);
  void close_frame(RegionKind kind, const std::function<std::vector<GateRecord>(const Frame &)> &synth);

  Backend &backend_;
  RuntimeOptions options_;
  std::vector<Array> arrays_;
  std::vector<bool> qubit_alive_;
  std::vector<Frame> frames_;
  std::vector<Segment> segments_;
  BackendStats stats_;
  std::ostream *out_ = nullptr;
};

}  // namespace qforge::runtime
