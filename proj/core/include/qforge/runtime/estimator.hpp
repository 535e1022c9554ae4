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

#include "qforge/runtime/backend.hpp"

namespace qforge::runtime {

/// Resource estimation: gates are only counted (by the runtime); measurements read 0.
class EstimatorBackend final : public Backend {
 public:
  void allocate(QubitId) override {}
  void release(QubitId) override {}
  void apply(const GateRecord &) override {}
  bool measure(QubitId) override { return false; }
  void reset(QubitId) override {}
  void begin_shot() override {}
};

}  // namespace qforge::runtime
