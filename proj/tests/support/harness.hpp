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

#include <string>
#include <string_view>
#include <vector>

#include "oracle.hpp"
#include "qforge/driver/driver.hpp"
#include "qforge/runtime/backend.hpp"

namespace qforge::testing {

/// Backend that keeps the flattened gate stream instead of simulating it.
class RecordingBackend final : public runtime::Backend {
 public:
  void allocate(runtime::QubitId q) override { allocated.push_back(q); }
  void release(runtime::QubitId q) override { released.push_back(q); }
  void apply(const runtime::GateRecord &g) override { gates.push_back(g); }
  bool measure(runtime::QubitId) override {
    ++measurements;
    return false;
  }
  void reset(runtime::QubitId) override { ++resets; }
  void begin_shot() override {}

  std::vector<runtime::QubitId> allocated;
  std::vector<runtime::QubitId> released;
  std::vector<runtime::GateRecord> gates;
  int measurements = 0;
  int resets = 0;
};

struct Trace {
  int num_qubits = 0;
  /// Gate stream with qubits renumbered by allocation order.
  Circuit circuit;
  std::vector<runtime::GateRecord> records;
};

/// Compiles `source` and runs it once on a RecordingBackend. `ccx_cost` 0 keeps ccx native.
Trace trace_program(std::string_view source, const driver::CompileOptions &options = {}, int ccx_cost = 0);

/// Final amplitudes after one statevector shot; bit k is the k-th allocated qubit.
State final_state(std::string_view source, const driver::CompileOptions &options = {}, int ccx_cost = 5,
                  std::uint64_t seed = 1);

driver::CompileOptions with_passes(std::vector<std::string> names);
driver::CompileOptions at_level(int opt_level);

}  // namespace qforge::testing
