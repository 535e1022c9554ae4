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

#include "qforge/ir/ir.hpp"

namespace qforge::ir {

/// Textual form, one op per line: `%3 = qvs.h(%2) : (!qubit) -> (!qubit)`. Value numbers are
/// dense per function, assigned in definition order.
std::string print_module(const Module &module);
std::string print_function(const Function &fn);

/// Shortest round-tripping decimal form that always reads back as a float (`1.0`, `1e+20`).
std::string format_double(double v);
std::string format_attribute(const Attribute &attr);

/// Same printed form. Nothing is dropped when printing.
bool structurally_equal(const Module &a, const Module &b);

}  // namespace qforge::ir
