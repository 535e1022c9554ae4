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

#include "qforge/runtime/runtime.hpp"

#include <algorithm>

#include "qforge/runtime/synthesis.hpp"
#include "qforge/support/diagnostic.hpp"
#include "qforge/support/gates.hpp"

namespace qforge::runtime {

namespace {

const char *kind_name(RegionKind k) {
  switch (k) {
    case RegionKind::Ctrl: return "ctrl";
    case RegionKind::Adj: return "adj";
    case RegionKind::Pow: return "pow";
  }
  return "?";
}

const char *segment_name(Segment s) {
  return s == Segment::Compute ? "compute" : s == Segment::Uncompute ? "uncompute" : "none";
}

}  // namespace

Runtime::Runtime(Backend &backend, RuntimeOptions options) : backend_(backend), options_(options) {}

const Runtime::Array &Runtime::array(ArrayId a) const {
  if (a >= arrays_.size()) throw RuntimeError("invalid array handle");
  const Array &arr = arrays_[a];
  if (!arr.alive) throw RuntimeError("use of a released qubit array");
  return arr;
}

void Runtime::check_live(QubitId q) const {
  if (q >= qubit_alive_.size() || !qubit_alive_[q])
    throw RuntimeError("use of a released qubit (handle " + std::to_string(q) + ")");
}

ArrayId Runtime::allocate_array(std::int64_t n) {
  if (n < 0) throw RuntimeError("negative qubit array size");
  Array arr;
  arr.owner = true;
  for (std::int64_t i = 0; i < n; ++i) {
    QubitId q = qubit_alive_.size();
    backend_.allocate(q);
    qubit_alive_.push_back(true);
    arr.qubits.push_back(q);
  }
  arrays_.push_back(std::move(arr));
  return arrays_.size() - 1;
}

QubitId Runtime::element(ArrayId a, std::int64_t index) {
  const Array &arr = array(a);
  if (index < 0 || index >= static_cast<std::int64_t>(arr.qubits.size()))
    throw RuntimeError("qubit index " + std::to_string(index) + " out of range for array of size " +
                       std::to_string(arr.qubits.size()));
  QubitId q = arr.qubits[static_cast<std::size_t>(index)];
  check_live(q);
  return q;
}

ArrayId Runtime::slice(ArrayId a, std::int64_t start, std::int64_t step, std::int64_t stop) {
  if (step == 0) throw RuntimeError("array slice with zero step");
  Array view;
  const auto &src = array(a).qubits;
  auto n = static_cast<std::int64_t>(src.size());
  for (std::int64_t i = start; step > 0 ? i <= stop : i >= stop; i += step) {
    if (i < 0 || i >= n) throw RuntimeError("array slice index " + std::to_string(i) + " out of range");
    view.qubits.push_back(src[static_cast<std::size_t>(i)]);
  }
  arrays_.push_back(std::move(view));
  return arrays_.size() - 1;
}

ArrayId Runtime::concat(ArrayId a, ArrayId b) {
  Array view;
  view.qubits = array(a).qubits;
  const auto &rhs = array(b).qubits;
  view.qubits.insert(view.qubits.end(), rhs.begin(), rhs.end());
  arrays_.push_back(std::move(view));
  return arrays_.size() - 1;
}

std::int64_t Runtime::size(ArrayId a) const { return static_cast<std::int64_t>(array(a).qubits.size()); }

void Runtime::release_array(ArrayId a) {
  const Array &arr = array(a);
  if (!arr.owner) throw RuntimeError("release of an array that was not allocated");
  for (QubitId q : arr.qubits) {
    check_live(q);
    qubit_alive_[q] = false;
    backend_.release(q);
  }
  arrays_[a].alive = false;
}

Segment Runtime::segment_for_frame() const {
  // Flags only count when opened inside the innermost region; an outer compute block does not
  // exempt gates from the region's own synthesis.
  std::size_t base = frames_.empty() ? 0 : frames_.back().segment_base;
  return segments_.size() > base ? segments_[base] : Segment::None;
}

void Runtime::gate(std::string_view name, std::vector<QubitId> qubits, std::vector<double> params) {
  const gates::GateInfo *info = gates::lookup(name);
  if (!info) throw RuntimeError("unknown gate '" + std::string(name) + "'");
  if (qubits.size() != static_cast<std::size_t>(info->num_qubits) ||
      params.size() != static_cast<std::size_t>(info->num_params))
    throw RuntimeError("wrong operand count for gate '" + std::string(name) + "'");
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    check_live(qubits[i]);
    for (std::size_t j = 0; j < i; ++j)
      if (qubits[i] == qubits[j]) throw RuntimeError("gate '" + std::string(name) + "' repeats a qubit");
  }
  emit({std::string(name), std::move(qubits), std::move(params), segment_for_frame()});
}

void Runtime::emit(GateRecord record) {
  if (!frames_.empty()) {
    frames_.back().records.push_back(std::move(record));
    return;
  }
  execute(record);
}

void Runtime::execute(const GateRecord &record) {
  if (record.gate == "ccx" && options_.ccx_cost != 0) {
    for (const auto &r : decompose_ccx(record.qubits[0], record.qubits[1], record.qubits[2], options_.ccx_cost))
      execute(r);
    return;
  }
  stats_.count(record.gate);
  backend_.apply(record);
}

bool Runtime::measure(QubitId q) {
  check_live(q);
  if (!frames_.empty()) throw RuntimeError("measurement inside a ctrl/adj/pow region");
  return backend_.measure(q);
}

void Runtime::reset(QubitId q) {
  check_live(q);
  if (!frames_.empty()) throw RuntimeError("reset inside a ctrl/adj/pow region");
  backend_.reset(q);
}

void Runtime::start_region(RegionKind kind) { frames_.push_back({kind, segments_.size(), {}}); }

void Runtime::close_frame(RegionKind kind,
                          const std::function<std::vector<GateRecord>(const Frame &)> &synth) {
  if (frames_.empty())
    throw RuntimeError(std::string("end of ") + kind_name(kind) + " region without a matching start");
  if (frames_.back().kind != kind)
    throw RuntimeError(std::string("end of ") + kind_name(kind) + " region closes an open " +
                       kind_name(frames_.back().kind) + " region");
  if (segments_.size() != frames_.back().segment_base)
    throw RuntimeError("region ends inside an unterminated compute/uncompute segment");
  Frame frame = std::move(frames_.back());
  frames_.pop_back();
  auto records = synth(frame);
  Segment outer = segment_for_frame();
  for (auto &r : records) {
    if (r.segment == Segment::None) r.segment = outer;
    emit(std::move(r));
  }
}

void Runtime::end_ctrl_region(QubitId ctrl) {
  check_live(ctrl);
  close_frame(RegionKind::Ctrl, [&](const Frame &f) { return synthesize_controlled(f.records, ctrl); });
}

void Runtime::end_adj_region() {
  close_frame(RegionKind::Adj, [](const Frame &f) { return synthesize_adjoint(f.records); });
}

void Runtime::end_pow_region(std::int64_t k) {
  close_frame(RegionKind::Pow, [&](const Frame &f) { return synthesize_power(f.records, k); });
}

void Runtime::mark(Segment s) { segments_.push_back(s); }

void Runtime::unmark(Segment s) {
  if (segments_.empty() || segments_.back() != s)
    throw RuntimeError(std::string("unbalanced end of ") + segment_name(s) + " segment");
  segments_.pop_back();
}

void Runtime::print(std::string_view line) {
  if (out_) *out_ << line << "\n";
}

void Runtime::finalize() {
  if (!frames_.empty())
    throw RuntimeError(std::string("program ends inside an open ") + kind_name(frames_.back().kind) + " region");
  if (!segments_.empty()) throw RuntimeError("program ends inside a compute/uncompute segment");
}

void Runtime::begin_shot() {
  arrays_.clear();
  qubit_alive_.clear();
  frames_.clear();
  segments_.clear();
  backend_.begin_shot();
}

}  // namespace qforge::runtime
