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

#include "qforge/support/gates.hpp"

#include <algorithm>
#include <array>
#include <numbers>

namespace qforge::gates {

namespace {

constexpr std::array kGates = {
    GateInfo{"x", 1, 0, DaggerRule::SelfInverse, "x", false},
    GateInfo{"y", 1, 0, DaggerRule::SelfInverse, "y", false},
    GateInfo{"z", 1, 0, DaggerRule::SelfInverse, "z", false},
    GateInfo{"h", 1, 0, DaggerRule::SelfInverse, "h", false},
    GateInfo{"s", 1, 0, DaggerRule::Swap, "sdg", false},
    GateInfo{"sdg", 1, 0, DaggerRule::Swap, "s", false},
    GateInfo{"t", 1, 0, DaggerRule::Swap, "tdg", false},
    GateInfo{"tdg", 1, 0, DaggerRule::Swap, "t", false},
    GateInfo{"rx", 1, 1, DaggerRule::NegateAngle, "rx", false},
    GateInfo{"ry", 1, 1, DaggerRule::NegateAngle, "ry", false},
    GateInfo{"rz", 1, 1, DaggerRule::NegateAngle, "rz", false},
    GateInfo{"phase", 1, 1, DaggerRule::NegateAngle, "phase", false},
    GateInfo{"u", 1, 3, DaggerRule::UPermute, "u", false},
    GateInfo{"cnot", 2, 0, DaggerRule::SelfInverse, "cnot", false},
    GateInfo{"cy", 2, 0, DaggerRule::SelfInverse, "cy", false},
    GateInfo{"cz", 2, 0, DaggerRule::SelfInverse, "cz", true},
    GateInfo{"ch", 2, 0, DaggerRule::SelfInverse, "ch", false},
    GateInfo{"crz", 2, 1, DaggerRule::NegateAngle, "crz", false},
    GateInfo{"cphase", 2, 1, DaggerRule::NegateAngle, "cphase", true},
    GateInfo{"swap", 2, 0, DaggerRule::SelfInverse, "swap", true},
    GateInfo{"ccx", 3, 0, DaggerRule::SelfInverse, "ccx", false},
};

struct Alias {
  std::string_view from;
  std::string_view to;
};

constexpr std::array kAliases = {
    Alias{"cx", "cnot"}, Alias{"CX", "cnot"},  Alias{"p", "phase"},
    Alias{"cp", "cphase"}, Alias{"U", "u"},     Alias{"u3", "u"},
    Alias{"toffoli", "ccx"},
};

}  // namespace

const GateInfo *lookup(std::string_view name) {
  auto it = std::find_if(kGates.begin(), kGates.end(),
                         [&](const GateInfo &g) { return g.name == name; });
  return it == kGates.end() ? nullptr : &*it;
}

std::optional<std::string> canonical_name(std::string_view source_name) {
  for (const auto &alias : kAliases) {
    if (alias.from == source_name) return std::string(alias.to);
  }
  if (lookup(source_name)) return std::string(source_name);
  return std::nullopt;
}

std::span<const GateInfo> all() { return kGates; }

std::string dagger_name(std::string_view name) {
  const GateInfo *info = lookup(name);
  return info ? std::string(info->dagger_name) : std::string(name);
}

std::vector<double> dagger_params(std::string_view name, std::span<const double> params) {
  const GateInfo *info = lookup(name);
  std::vector<double> out(params.begin(), params.end());
  if (!info) return out;
  switch (info->dagger) {
    case DaggerRule::NegateAngle:
      for (double &p : out) p = -p;
      break;
    case DaggerRule::UPermute:
      if (out.size() == 3) out = {-params[0], -params[2], -params[1]};
      break;
    default:
      break;
  }
  return out;
}

bool is_z_diagonal(std::string_view name) {
  return name == "z" || name == "s" || name == "sdg" || name == "t" || name == "tdg" ||
         name == "rz" || name == "phase";
}

std::optional<double> z_family_angle(std::string_view name) {
  using std::numbers::pi;
  if (name == "z") return pi;
  if (name == "s") return pi / 2;
  if (name == "sdg") return -pi / 2;
  if (name == "t") return pi / 4;
  if (name == "tdg") return -pi / 4;
  return std::nullopt;
}

}  // namespace qforge::gates
