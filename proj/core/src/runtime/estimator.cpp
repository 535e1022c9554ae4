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

#include "qforge/runtime/estimator.hpp"

#include <json.hpp>

namespace qforge::runtime {

void BackendStats::count(const std::string &gate) {
  ++total_gates;
  ++per_gate[gate];
  if (gate == "cnot" || gate == "crz") ++controlled_ops_cx_crz;
}

std::string stats_json(const BackendStats &stats, std::uint64_t shots, std::uint64_t seed) {
  // nlohmann::json objects are std::map backed, so keys come out sorted.
  nlohmann::json j;
  j["total_gates"] = stats.total_gates;
  j["per_gate"] = nlohmann::json::object();
  for (const auto &[name, n] : stats.per_gate) j["per_gate"][name] = n;
  j["controlled_ops_cx_crz"] = stats.controlled_ops_cx_crz;
  j["shots"] = shots;
  j["seed"] = seed;
  return j.dump(2);
}

}  // namespace qforge::runtime
