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

#include <optional>
#include <span>
#include <string_view>

#include "qforge/ir/ir.hpp"
#include "qforge/symtab/const_value.hpp"

namespace qforge::ir {

/// Converts `v` to the representation of type `t` (integer widths wrap, floats truncate
/// toward zero when narrowed to integers). Nullopt when the value does not fit.
std::optional<symtab::ConstValue> coerce(const symtab::ConstValue &v, Type t);

/// Reads the `value` attribute of an arith.constant as a value of its result type.
symtab::ConstValue constant_value(const Operation &constant, Type t);

/// `value` attribute for a constant of type `t`.
Attribute constant_attr(const symtab::ConstValue &v, Type t);

/// Evaluates a pure scalar op (arith.*, math.call). Throws CompileError for division by zero,
/// overflow and similar faults; nullopt for ops it does not evaluate.
std::optional<symtab::ConstValue> evaluate(const Operation &op, std::span<const symtab::ConstValue> operands,
                                           Type result);

/// Same as above, keyed by opcode name. `detail` is the cmp predicate or math function.
std::optional<symtab::ConstValue> evaluate(std::string_view name, std::string_view detail,
                                           std::span<const symtab::ConstValue> operands, Type result,
                                           SourceLocation loc = {});

}  // namespace qforge::ir
