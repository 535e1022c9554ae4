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
#include <string>

#include "qforge/lowering/lir.hpp"
#include "qforge/runtime/backend.hpp"
#include "qforge/runtime/runtime.hpp"

namespace qforge::runtime {

enum class BackendKind { Estimator, Statevector };

struct ExecutionConfig {
  BackendKind backend = BackendKind::Estimator;
  std::uint64_t shots = 1;
  std::uint64_t seed = 0;
  std::size_t qubit_cap = 22;
  int ccx_cost = 5;
};

struct ExecutionResult {
  BackendStats stats;
  /// Text produced by print calls.
  std::string output;
};

/// Runs @main of `module` once against `runtime`. Throws RuntimeError.
void run_main(const lowering::LirModule &module, Runtime &runtime);

/// Builds the configured backend and runs @main `shots` times.
ExecutionResult execute(const lowering::LirModule &module, const ExecutionConfig &config);

}  // namespace qforge::runtime
