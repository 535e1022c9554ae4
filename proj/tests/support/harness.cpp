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

#include "harness.hpp"

#include <map>
#include <stdexcept>

#include "qforge/runtime/interpreter.hpp"
#include "qforge/runtime/runtime.hpp"
#include "qforge/runtime/statevector.hpp"

namespace qforge::testing {

Trace trace_program(std::string_view source, const driver::CompileOptions &options, int ccx_cost) {
  auto c = driver::compile(source, driver::Stage::Lowered, options);
  RecordingBackend backend;
  runtime::Runtime rt(backend, runtime::RuntimeOptions{ccx_cost});
  runtime::run_main(c.lir, rt);

  Trace t;
  std::map<runtime::QubitId, int> index;
  for (auto q : backend.allocated) index.emplace(q, static_cast<int>(index.size()));
  t.num_qubits = static_cast<int>(index.size());
  for (const auto &r : backend.gates) {
    OracleGate g{r.gate, {}, r.params};
    for (auto q : r.qubits) {
      auto it = index.find(q);
      if (it == index.end()) throw std::logic_error("gate on unallocated qubit");
      g.qubits.push_back(it->second);
    }
    t.circuit.push_back(std::move(g));
  }
  t.records = std::move(backend.gates);
  return t;
}

State final_state(std::string_view source, const driver::CompileOptions &options, int ccx_cost,
                  std::uint64_t seed) {
  auto c = driver::compile(source, driver::Stage::Lowered, options);
  runtime::StatevectorBackend backend(seed);
  runtime::Runtime rt(backend, runtime::RuntimeOptions{ccx_cost});
  runtime::run_main(c.lir, rt);
  const auto &amps = backend.state().amplitudes();
  return State(amps.begin(), amps.end());
}

driver::CompileOptions with_passes(std::vector<std::string> names) {
  driver::CompileOptions o;
  o.passes = std::move(names);
  return o;
}

driver::CompileOptions at_level(int opt_level) {
  driver::CompileOptions o;
  o.opt_level = opt_level;
  return o;
}

}  // namespace qforge::testing
