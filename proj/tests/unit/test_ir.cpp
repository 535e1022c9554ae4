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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "harness.hpp"
#include "qforge/driver/driver.hpp"
#include "qforge/driver/fixtures.hpp"
#include "qforge/frontend/parser.hpp"
#include "qforge/ir/builder.hpp"
#include "qforge/ir/printer.hpp"
#include "qforge/ir/text_parser.hpp"
#include "qforge/ir/verifier.hpp"
#include "qforge/passes/passes.hpp"

using namespace qforge;
using namespace qforge::ir;

namespace {

std::unique_ptr<Module> build(const std::string &source) {
  auto parsed = frontend::parse_source(source);
  EXPECT_TRUE(parsed.ok());
  auto built = build_module(*parsed.program);
  EXPECT_TRUE(built.ok()) << (built.diagnostics.empty() ? "" : built.diagnostics[0].message);
  return std::move(built.module);
}

DiagnosticList build_errors(const std::string &source) {
  auto parsed = frontend::parse_source(source);
  EXPECT_TRUE(parsed.ok());
  return build_module(*parsed.program).diagnostics;
}

std::map<std::string, int> op_histogram(const Function &fn) {
  std::map<std::string, int> h;
  walk(fn.body, [&](const Operation &op) { ++h[op.name]; });
  return h;
}

std::vector<const Operation *> top_level(const Function &fn) {
  std::vector<const Operation *> ops;
  for (const auto &op : fn.body.ops)
    if (!op->erased) ops.push_back(op.get());
  return ops;
}

bool mentions(const DiagnosticList &diags, const std::string &needle) {
  return std::any_of(diags.begin(), diags.end(),
                     [&](const Diagnostic &d) { return d.message.find(needle) != std::string::npos; });
}

// Users lists must equal what a fresh scan of operands finds.
::testing::AssertionResult users_consistent(const Module &m) {
  for (const auto &fn : m.functions) {
    if (fn->is_declaration) continue;
    std::map<std::uint32_t, std::vector<const Operation *>> scanned;
    walk(fn->body, [&](const Operation &op) {
      for (auto v : op.operands()) scanned[v.raw].push_back(&op);
    });
    for (std::uint32_t v = 0; v < fn->num_values(); ++v) {
      std::vector<const Operation *> recorded;
      for (auto *u : fn->users(ValueId{v}))
        if (!u->erased) recorded.push_back(u);
      auto expect = scanned[v];
      std::sort(recorded.begin(), recorded.end());
      std::sort(expect.begin(), expect.end());
      if (recorded != expect)
        return ::testing::AssertionFailure() << "@" << fn->name << " %" << v << " users mismatch";
    }
  }
  return ::testing::AssertionSuccess();
}

// Gate ops thread qubits: as many qubit results as qubit operands, all fresh.
// Qubit values are linear: every gate yields new values and each value is consumed once.
::testing::AssertionResult value_semantics(const Module &m) {
  for (const auto &fn : m.functions) {
    if (fn->is_declaration) continue;
    ::testing::AssertionResult result = ::testing::AssertionSuccess();
    std::set<ValueId> consumed;
    walk(fn->body, [&](const Operation &op) {
      if (!is_gate(op) && op.name != op::kMeasure && op.name != op::kReset) return;
      if (is_broadcast(op)) return;
      std::vector<ValueId> qin, qout;
      for (auto v : op.operands())
        if (fn->type(v).is_qubit()) qin.push_back(v);
      for (auto v : op.results)
        if (fn->type(v).is_qubit()) qout.push_back(v);
      if (qin.size() != qout.size()) result = ::testing::AssertionFailure() << op.name << " arity";
      for (auto o : qout)
        if (std::find(qin.begin(), qin.end(), o) != qin.end())
          result = ::testing::AssertionFailure() << op.name << " result not fresh";
      for (auto i : qin)
        if (!consumed.insert(i).second) result = ::testing::AssertionFailure() << op.name << " reuses a qubit value";
    });
    if (!result) return result;
  }
  return ::testing::AssertionSuccess();
}

}  // namespace

// ---- builder -------------------------------------------------------------------------

TEST(Builder, GhzOps) {
  auto m = build(driver::ghz_source());
  auto h = op_histogram(*m->find("main"));
  EXPECT_EQ(h["q.qalloc"], 1);
  EXPECT_EQ(h["q.extract"], 3);
  EXPECT_EQ(h["qvs.h"], 1);
  EXPECT_EQ(h["qvs.cnot"], 2);
  EXPECT_EQ(h["q.dealloc"], 1);
}

TEST(Builder, RotationWithRuntimeAngle) {
  auto m = build("qubit q;\nfloat[64] theta = 0.3;\nry(theta) q;");
  const Function &fn = *m->find("main");
  const Operation *ry = nullptr;
  walk(fn.body, [&](const Operation &op) {
    if (op.name == "qvs.ry") ry = &op;
  });
  ASSERT_NE(ry, nullptr);
  ASSERT_EQ(ry->num_operands(), 2u);
  EXPECT_TRUE(fn.type(ry->operand(0)).is_qubit());
  EXPECT_EQ(fn.type(ry->operand(1)), Type::f64());
  ASSERT_EQ(ry->results.size(), 1u);
  EXPECT_TRUE(fn.type(ry->result()).is_qubit());
}

TEST(Builder, RangeLoopBounds) {
  auto m = build("qubit q;\nfor i in [0:10] { h q; }");
  const Function &fn = *m->find("main");
  const Operation *loop = nullptr;
  for (auto *op : top_level(fn))
    if (op->name == op::kFor) loop = op;
  ASSERT_NE(loop, nullptr);
  ASSERT_EQ(loop->num_operands(), 3u);
  auto constant = [&](ValueId v) { return fn.def(v)->int_attr("value"); };
  EXPECT_EQ(constant(loop->operand(0)), 0);
  EXPECT_EQ(constant(loop->operand(1)), 10);
  EXPECT_EQ(constant(loop->operand(2)), 1);
  EXPECT_EQ(loop->region().args.size(), 1u);
}

TEST(Builder, CtrlModifierWrapsCall) {
  auto m = build("qubit q[2];\ndef oracle(qubit a) { x a; }\nctrl @ oracle q[0], q[1];");
  const Function &fn = *m->find("main");
  const Operation *region = nullptr;
  for (auto *op : top_level(fn))
    if (op->name == op::kCtrlRegion) region = op;
  ASSERT_NE(region, nullptr);
  ASSERT_EQ(region->num_operands(), 1u);
  const Operation *ctrl = fn.def(region->operand(0));
  ASSERT_EQ(ctrl->name, op::kExtract);
  EXPECT_EQ(fn.def(ctrl->operand(1))->int_attr("value"), 0);
  bool calls_oracle = false;
  walk(region->region(), [&](const Operation &op) {
    if (op.name == op::kCall && op.str_attr("callee") == "oracle") calls_oracle = true;
  });
  EXPECT_TRUE(calls_oracle);
}

TEST(Builder, ComputeActionSegments) {
  auto m = build(driver::compute_action_source());
  const Function &fn = *m->find("main");
  std::vector<std::pair<std::string, std::string>> seq;
  for (auto *op : top_level(fn))
    if (is_gate(*op) || op->name == op::kFor) seq.emplace_back(op->name, segment_of(*op));
  const std::vector<std::pair<std::string, std::string>> want{
      {"qvs.rx", "compute"},     {"qvs.h", "compute"},       {"affine.for", "compute"}, {"qvs.rz", ""},
      {"affine.for", "uncompute"}, {"qvs.h", "uncompute"}, {"qvs.rx", "uncompute"}};
  EXPECT_EQ(seq, want);
}

// At the gate-record level the uncompute segment is the reversed adjoint of the compute one.
TEST(Builder, UncomputeIsReversedAdjoint) {
  for (int level : {0, 1}) {
    auto t = qforge::testing::trace_program(driver::compute_action_source(), qforge::testing::at_level(level));
    qforge::testing::Circuit compute, uncompute;
    for (std::size_t i = 0; i < t.records.size(); ++i) {
      if (t.records[i].segment == runtime::Segment::Compute) compute.push_back(t.circuit[i]);
      if (t.records[i].segment == runtime::Segment::Uncompute) uncompute.push_back(t.circuit[i]);
    }
    auto expect = qforge::testing::inverse(compute);
    ASSERT_EQ(uncompute.size(), expect.size()) << "O" << level;
    ASSERT_FALSE(expect.empty());
    for (std::size_t i = 0; i < expect.size(); ++i) {
      EXPECT_EQ(uncompute[i].name, expect[i].name) << i;
      EXPECT_EQ(uncompute[i].qubits, expect[i].qubits) << i;
      ASSERT_EQ(uncompute[i].params.size(), expect[i].params.size());
      for (std::size_t k = 0; k < expect[i].params.size(); ++k)
        EXPECT_NEAR(uncompute[i].params[k], expect[i].params[k], 1e-12);
    }
  }
}

TEST(Builder, UndeclaredSymbol) {
  auto d = build_errors("qubit q;\nx r;");
  ASSERT_FALSE(d.empty());
  EXPECT_EQ(d[0].loc.line, 2);
}

TEST(Builder, GateArityMismatch) {
  auto d = build_errors("qubit q[2];\ncx q[0];");
  ASSERT_FALSE(d.empty());
  EXPECT_EQ(d[0].loc.line, 2);
}

TEST(Builder, ClassicalValueInQubitPosition) {
  auto d = build_errors("qubit q;\nint[32] k = 1;\nx k;");
  ASSERT_FALSE(d.empty());
  EXPECT_EQ(d[0].loc.line, 3);
}

TEST(Builder, ConstantsBecomeGlobals) {
  auto m = build("const shots = 1024;\nconst theta = 0.5;\nqubit q;\nrx(theta) q;");
  const Global *g = m->find_global("shots");
  ASSERT_NE(g, nullptr);
  EXPECT_EQ(g->type, Type::int_(64));
  EXPECT_EQ(std::get<std::int64_t>(g->value), 1024);
  ASSERT_NE(m->find_global("theta"), nullptr);
}

TEST(Builder, SubroutinesAndExterns) {
  auto m = build("extern get() -> int[32];\ndef f(qubit a) { h a; }\nqubit q;\nf(q);\nint[32] v = get();");
  ASSERT_NE(m->find("f"), nullptr);
  ASSERT_NE(m->find("get"), nullptr);
  EXPECT_TRUE(m->find("get")->is_declaration);
  EXPECT_FALSE(m->find("f")->is_declaration);
}

TEST(Builder, MeasureYieldsBoolAndQubit) {
  auto m = build("qubit q;\nbit c;\nc = measure q;");
  const Function &fn = *m->find("main");
  const Operation *mz = nullptr;
  walk(fn.body, [&](const Operation &op) {
    if (op.name == op::kMeasure) mz = &op;
  });
  ASSERT_NE(mz, nullptr);
  ASSERT_EQ(mz->results.size(), 2u);
  EXPECT_TRUE(fn.type(mz->result(0)).is_bool());
  EXPECT_TRUE(fn.type(mz->result(1)).is_qubit());
}

TEST(Builder, CompoundAssignmentIsLoadArithStore) {
  auto m = build("int[32] i = 0;\ni += 3;");
  auto ops = top_level(*m->find("main"));
  std::vector<std::string> names;
  for (auto *op : ops) names.push_back(op->name);
  auto load = std::find(names.begin(), names.end(), "memref.load");
  ASSERT_NE(load, names.end());
  auto add = std::find(load, names.end(), "arith.add");
  ASSERT_NE(add, names.end());
  EXPECT_NE(std::find(add, names.end(), "memref.store"), names.end());
}

TEST(Builder, IfHasThenAndElseRegions) {
  auto m = build("qubit q;\nbit c;\nc = measure q;\nif (c) { x q; } else { h q; }");
  const Operation *branch = nullptr;
  walk(m->find("main")->body, [&](const Operation &op) {
    if (op.name == op::kIf) branch = &op;
  });
  ASSERT_NE(branch, nullptr);
  EXPECT_EQ(branch->regions.size(), 2u);
}

TEST(Builder, LetSliceAndConcat) {
  auto m = build("qubit a[4];\nqubit b[2];\nlet s = a[0:2:3];\nlet c = s ++ b;\nh c;");
  auto h = op_histogram(*m->find("main"));
  EXPECT_EQ(h["q.array_slice"], 1);
  EXPECT_EQ(h["q.array_concat"], 1);
}

// ---- verifier ------------------------------------------------------------------------

TEST(Verifier, BuiltModulesVerify) {
  for (const auto &name : driver::fixture_names()) {
    auto m = build(*driver::fixture_source(name));
    EXPECT_TRUE(verify(*m).empty()) << name;
  }
}

TEST(Verifier, ReusedQubitIsLinearityError) {
  Module m;
  Function &fn = m.add_function("main");
  auto *alloc = fn.build(fn.body, "q.qalloc", {}, {Type::qarray(1)}, {{"size", std::int64_t{1}}});
  auto *idx = fn.build(fn.body, "arith.constant", {}, {Type::index()}, {{"value", std::int64_t{0}}});
  auto *q = fn.build(fn.body, "q.extract", {alloc->result(), idx->result()}, {Type::qubit()});
  fn.build(fn.body, "qvs.h", {q->result()}, {Type::qubit()});
  fn.build(fn.body, "qvs.x", {q->result()}, {Type::qubit()});
  fn.build(fn.body, "q.dealloc", {alloc->result()}, {});
  fn.build(fn.body, "func.return", {}, {});
  auto d = verify(m);
  ASSERT_FALSE(d.empty());
  EXPECT_TRUE(mentions(d, "qvs.x")) << d[0].message;
  EXPECT_THROW(verify_or_throw(m, "test"), InternalError);
}

TEST(Verifier, FloatInQubitSlotIsTypeError) {
  Module m;
  Function &fn = m.add_function("main");
  auto *f = fn.build(fn.body, "arith.constant", {}, {Type::f64()}, {{"value", 1.0}});
  fn.build(fn.body, "qvs.h", {f->result()}, {Type::qubit()});
  fn.build(fn.body, "func.return", {}, {});
  auto d = verify(m);
  ASSERT_FALSE(d.empty());
  EXPECT_TRUE(mentions(d, "qvs.h"));
}

TEST(Verifier, UseBeforeDefinition) {
  auto parsed = parse_ir(
      "func @main() {\n"
      "  %0 = arith.add(%1, %1) : (i64, i64) -> (i64)\n"
      "  %1 = arith.constant() {value = 1} : () -> (i64)\n"
      "  return\n"
      "}\n");
  if (!parsed.ok()) {
    SUCCEED() << "rejected while parsing";
    return;
  }
  EXPECT_FALSE(verify(*parsed.module).empty());
}

TEST(Verifier, MissingReturn) {
  Module m;
  Function &fn = m.add_function("main");
  fn.build(fn.body, "arith.constant", {}, {Type::int_()}, {{"value", std::int64_t{1}}});
  EXPECT_FALSE(verify(m).empty());
}

// ---- printer and text parser ---------------------------------------------------------

TEST(Printer, EmptyFunctionRoundTrips) {
  auto parsed = parse_ir("func @f() { return }");
  ASSERT_TRUE(parsed.ok());
  std::string text = print_module(*parsed.module);
  auto again = parse_ir(text);
  ASSERT_TRUE(again.ok());
  EXPECT_TRUE(structurally_equal(*parsed.module, *again.module));
  EXPECT_EQ(print_module(*again.module), text);
}

TEST(Printer, GhzText) {
  auto m = build(driver::ghz_source());
  std::string text = print_module(*m);
  EXPECT_NE(text.find("q.qalloc"), std::string::npos);
  EXPECT_NE(text.find("%3 = qvs.h(%2) : (!qubit) -> (!qubit)"), std::string::npos);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 14);
}

TEST(Printer, RoundTripsEveryFixtureAtEveryStage) {
  for (const auto &name : driver::fixture_names()) {
    for (auto stage : {driver::Stage::Ir, driver::Stage::IrOpt}) {
      auto c = driver::compile(*driver::fixture_source(name), stage);
      std::string text = print_module(*c.module);
      auto parsed = parse_ir(text);
      ASSERT_TRUE(parsed.ok()) << name << ": " << parsed.diagnostics.at(0).message;
      EXPECT_TRUE(structurally_equal(*c.module, *parsed.module)) << name;
      EXPECT_EQ(print_module(*parsed.module), text) << name;
      EXPECT_TRUE(verify(*parsed.module).empty()) << name;
    }
  }
}

TEST(Printer, CallModuleRoundTrips) {
  auto m = build(driver::cancel_source());
  std::string text = print_module(*m);
  EXPECT_NE(text.find("func.call(%0) {callee = \"foo\"}"), std::string::npos);
  auto parsed = parse_ir(text);
  ASSERT_TRUE(parsed.ok());
  EXPECT_TRUE(structurally_equal(*m, *parsed.module));
}

TEST(Printer, MalformedTextIsDiagnostic) {
  auto r = parse_ir("func @main() {\n  %0 = qvs.h(%9 : (!qubit) -> (!qubit)\n  return\n}\n");
  EXPECT_FALSE(r.ok());
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(r.diagnostics[0].loc.line, 2);
}

TEST(Printer, FloatFormatting) {
  EXPECT_EQ(format_double(1.0), "1.0");
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(std::stod(format_double(0.7853981633974483)), 0.7853981633974483);
}

// ---- invariants across passes --------------------------------------------------------

TEST(Invariants, UsersAndValueSemanticsHoldAfterEveryPass) {
  for (const auto &name : driver::fixture_names()) {
    auto m = build(*driver::fixture_source(name));
    ASSERT_TRUE(users_consistent(*m)) << name;
    ASSERT_TRUE(value_semantics(*m)) << name;
    for (const auto &info : passes::all_passes()) {
      passes::run_passes(*m, {std::string(info.name)});
      EXPECT_TRUE(users_consistent(*m)) << name << " after " << info.name;
      EXPECT_TRUE(value_semantics(*m)) << name << " after " << info.name;
      EXPECT_TRUE(verify(*m).empty()) << name << " after " << info.name;
    }
  }
}
