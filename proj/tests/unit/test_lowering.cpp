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

#include <fstream>
#include <map>
#include <random>
#include <regex>
#include <sstream>

#include "harness.hpp"
#include "oracle.hpp"
#include "random_programs.hpp"
#include "qforge/driver/driver.hpp"
#include "qforge/driver/fixtures.hpp"
#include "qforge/lowering/lir.hpp"
#include "qforge/lowering/lower.hpp"

using namespace qforge;
using namespace qforge::lowering;

namespace {

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string lowered_text(const std::string &source, int opt_level = 1) {
  return emit_text(driver::compile(source, driver::Stage::Lowered, qforge::testing::at_level(opt_level)).lir);
}

std::vector<std::string> lines(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

// Callee symbols of @main's call instructions, in block order.
std::vector<std::string> callees(const LirModule &m) {
  std::vector<std::string> out;
  for (const auto &b : m.find("main")->blocks)
    for (const auto &i : b.insts)
      if (i.op == Opcode::Call) out.push_back(i.name);
  return out;
}

std::size_t count_lines_with(const std::string &text, const std::string &needle) {
  std::size_t n = 0;
  for (const auto &l : lines(text))
    if (l.find(needle) != std::string::npos) ++n;
  return n;
}

// Straight-line interpreter over structured IR for gate-only programs: qubits are numbered by
// register order and element index; parameters are evaluated from their constant chains.
qforge::testing::Circuit interpret_ir(const ir::Module &m, int &num_qubits) {
  const ir::Function &fn = *m.find("main");
  std::map<std::uint32_t, int> qubit_of;
  std::map<std::uint32_t, int> array_base;
  std::map<std::uint32_t, double> number;
  num_qubits = 0;
  qforge::testing::Circuit out;
  for (const auto &opp : fn.body.ops) {
    const ir::Operation &op = *opp;
    if (op.erased) continue;
    auto num = [&](std::size_t i) { return number.at(op.operand(i).raw); };
    if (op.name == "arith.constant") {
      if (auto i = op.int_attr("value")) number[op.result().raw] = static_cast<double>(*i);
      if (auto f = op.float_attr("value")) number[op.result().raw] = *f;
    } else if (op.name == "arith.neg") {
      number[op.result().raw] = -num(0);
    } else if (op.name == "arith.cast") {
      number[op.result().raw] = num(0);
    } else if (op.name == "arith.add" || op.name == "arith.sub" || op.name == "arith.mul" || op.name == "arith.div") {
      double a = num(0), b = num(1);
      number[op.result().raw] = op.name == "arith.add" ? a + b : op.name == "arith.sub" ? a - b
                                : op.name == "arith.mul" ? a * b : a / b;
    } else if (op.name == "q.qalloc") {
      array_base[op.result().raw] = num_qubits;
      num_qubits += static_cast<int>(*op.int_attr("size"));
    } else if (op.name == "q.extract") {
      qubit_of[op.result().raw] = array_base.at(op.operand(0).raw) + static_cast<int>(num(1));
    } else if (ir::is_gate(op)) {
      qforge::testing::OracleGate g{ir::gate_name(op), {}, {}};
      if (auto *angles = ir::gate_angles(op)) g.params = *angles;
      for (auto v : ir::gate_param_operands(op)) g.params.push_back(number.at(v.raw));
      std::size_t nq = ir::gate_qubit_count(op);
      for (std::size_t k = 0; k < nq; ++k) {
        int q = qubit_of.at(op.operand(k).raw);
        g.qubits.push_back(q);
        qubit_of[op.result(k).raw] = q;
      }
      out.push_back(std::move(g));
    } else if (op.name != "q.dealloc" && op.name != "func.return") {
      throw std::runtime_error("interpret_ir: unsupported op " + op.name);
    }
  }
  return out;
}

}  // namespace

TEST(Lowering, GhzGoldenText) {
  EXPECT_EQ(lowered_text(driver::ghz_source()), read_file(std::string(QFORGE_GOLDEN_DIR) + "/ghz.lowered"));
}

TEST(Lowering, GhzCallOrder) {
  auto c = driver::compile(driver::ghz_source());
  std::vector<std::string> quantum;
  for (const auto &s : callees(c.lir))
    if (s != "__quantum__rt__array_get_element_ptr_1d") quantum.push_back(s);
  EXPECT_EQ(quantum, (std::vector<std::string>{
                         "__quantum__rt__qubit_allocate_array", "__quantum__qis__h", "__quantum__qis__cnot",
                         "__quantum__qis__cnot", "__quantum__rt__qubit_release_array", "__quantum__rt__finalize"}));
}

TEST(Lowering, ChainCollapsesToRootHandle) {
  auto c = driver::compile("qubit q;\nh q;\nt q;\nx q;\n", driver::Stage::Lowered, qforge::testing::at_level(0));
  std::vector<Reg> handles;
  for (const auto &b : c.lir.find("main")->blocks)
    for (const auto &i : b.insts)
      if (i.op == Opcode::Call && i.name.rfind("__quantum__qis__", 0) == 0) {
        ASSERT_EQ(i.args.size(), 1u);
        ASSERT_EQ(i.args[0].kind, Operand::Kind::Reg);
        handles.push_back(i.args[0].reg);
      }
  ASSERT_EQ(handles.size(), 3u);
  EXPECT_EQ(handles[0], handles[1]);
  EXPECT_EQ(handles[1], handles[2]);
}

TEST(Lowering, ParityBranchHasIncrementBlock) {
  auto c = driver::compile(driver::deuteron_source());
  const auto &fn = *c.lir.find("main");
  bool found = false;
  for (const auto &b : fn.blocks) {
    if (b.insts.empty() || b.insts.back().op != Opcode::CondBr) continue;
    const Block &then_block = fn.blocks.at(b.insts.back().target);
    bool load = false, add = false, store = false;
    for (const auto &i : then_block.insts) {
      load |= i.op == Opcode::Load;
      add |= i.op == Opcode::Arith && i.name == "arith.add";
      store |= i.op == Opcode::Store;
    }
    if (load && add && store && then_block.insts.back().op == Opcode::Br) found = true;
  }
  EXPECT_TRUE(found);
  EXPECT_NE(emit_text(c.lir).find("cond_br i1 %"), std::string::npos);
}

TEST(Lowering, AdjRegionAroundPhase) {
  auto c = driver::compile("qubit q;\ninv @ phase(pi) q;\n", driver::Stage::Lowered, qforge::testing::at_level(0));
  std::vector<std::string> relevant;
  for (const auto &s : callees(c.lir))
    if (s.find("region") != std::string::npos || s.find("__qis__") != std::string::npos) relevant.push_back(s);
  EXPECT_EQ(relevant, (std::vector<std::string>{"__quantum__rt__start_adj_u_region", "__quantum__qis__phase",
                                                "__quantum__rt__end_adj_u_region"}));
}

TEST(Lowering, CtrlAndPowPassOperandsToEnd) {
  auto c = driver::compile("qubit q[2];\npow(3) @ x q[1];\nctrl @ h q[0], q[1];\n", driver::Stage::Lowered,
                           qforge::testing::at_level(0));
  bool pow_ok = false, ctrl_ok = false;
  for (const auto &b : c.lir.find("main")->blocks)
    for (const auto &i : b.insts) {
      if (i.name == "__quantum__rt__end_pow_u_region")
        pow_ok = i.args.size() == 1 && i.args[0].kind == Operand::Kind::Int && i.args[0].i == 3;
      if (i.name == "__quantum__rt__end_ctrl_u_region")
        ctrl_ok = i.args.size() == 1 && i.args[0].kind == Operand::Kind::Reg;
    }
  EXPECT_TRUE(pow_ok);
  EXPECT_TRUE(ctrl_ok);
}

TEST(Lowering, EmptyMain) {
  EXPECT_EQ(lowered_text(""),
            "; qasm-forge lowered module\n"
            "declare void @__quantum__rt__finalize()\n"
            "\n"
            "define void @main() {\n"
            "entry:\n"
            "  call void @__quantum__rt__finalize()\n"
            "  ret void\n"
            "}\n");
}

TEST(Lowering, DeuteronMeasuresTwicePerLoopBody) {
  for (int level : {0, 1}) {
    auto text = lowered_text(driver::deuteron_source(), level);
    EXPECT_EQ(count_lines_with(text, "call %Result* @__quantum__qis__mz"), 2u) << "O" << level;
  }
}

TEST(Lowering, UnloweredOpcodeIsInternalError) {
  ir::Module m;
  ir::Function &fn = m.add_function("main");
  fn.build(fn.body, "mystery.op", {}, {});
  fn.build(fn.body, "func.return", {}, {});
  try {
    lower_to_cfg(m);
    FAIL() << "expected InternalError";
  } catch (const InternalError &e) {
    EXPECT_NE(std::string(e.what()).find("mystery.op"), std::string::npos);
  }
}

TEST(Lowering, DeclarationsFirstAndSorted) {
  auto text = lowered_text(driver::deuteron_source());
  auto ls = lines(text);
  std::vector<std::string> decls;
  bool seen_define = false;
  for (const auto &l : ls) {
    if (l.rfind("define", 0) == 0) seen_define = true;
    if (l.rfind("declare", 0) == 0) {
      EXPECT_FALSE(seen_define) << l;
      std::smatch mm;
      ASSERT_TRUE(std::regex_search(l, mm, std::regex("@([A-Za-z0-9_]+)\\(")));
      decls.push_back(mm[1]);
    }
  }
  EXPECT_TRUE(std::is_sorted(decls.begin(), decls.end()));
}

TEST(Lowering, WellFormedAndBalancedOnFixtures) {
  for (const auto &name : driver::fixture_names()) {
    for (int level : {0, 1}) {
      auto c = driver::compile(*driver::fixture_source(name), driver::Stage::Lowered, qforge::testing::at_level(level));
      EXPECT_TRUE(check_module(c.lir).empty()) << name;
      EXPECT_TRUE(check_region_balance(c.lir).empty()) << name;
      for (const auto &d : c.lir.declarations) EXPECT_TRUE(is_runtime_symbol(d.symbol)) << d.symbol;
    }
  }
}

TEST(Lowering, RegionsInsideBranchesStayBalanced) {
  auto src =
      "qubit q[2];\nbit c;\nc = measure q[0];\n"
      "if (c) { ctrl @ x q[0], q[1]; } else { inv @ s q[1]; }\n"
      "for i in [0:3] { pow(2) @ t q[1]; }\n";
  auto c = driver::compile(src, driver::Stage::Lowered, qforge::testing::at_level(0));
  EXPECT_TRUE(check_region_balance(c.lir).empty());
}

TEST(Lowering, BalanceCheckerFindsMissingEnd) {
  auto c = driver::compile("qubit q;\ninv @ s q;\n", driver::Stage::Lowered, qforge::testing::at_level(0));
  LirModule broken = c.lir;
  for (auto &b : broken.functions.front().blocks)
    for (auto it = b.insts.begin(); it != b.insts.end(); ++it)
      if (it->name == "__quantum__rt__end_adj_u_region") {
        b.insts.erase(it);
        break;
      }
  EXPECT_FALSE(check_region_balance(broken).empty());
}

TEST(Lowering, EmitIsDeterministic) {
  for (const auto &name : driver::fixture_names()) {
    auto src = *driver::fixture_source(name);
    EXPECT_EQ(lowered_text(src), lowered_text(src)) << name;
  }
}

// Executing the lowered module must apply the same gates to the same qubits as the
// structured IR it came from.
TEST(Lowering, HandleRootsMatchStructuredIr) {
  std::mt19937_64 rng(5150);
  for (int iter = 0; iter < 100; ++iter) {
    auto p = qforge::testing::random_program(rng);
    for (int level : {0, 1}) {
      auto c = driver::compile(p.source, driver::Stage::Lowered, qforge::testing::at_level(level));
      int n = 0;
      auto from_ir = interpret_ir(*c.module, n);
      auto t = qforge::testing::trace_program(p.source, qforge::testing::at_level(level));
      ASSERT_EQ(t.num_qubits, n);
      auto a = qforge::testing::run(p.num_qubits, from_ir);
      auto b = qforge::testing::run(p.num_qubits, t.circuit);
      ASSERT_LT(qforge::testing::phase_distance(a, b), 1e-9) << p.source;
      ASSERT_EQ(t.circuit.size(), from_ir.size());
    }
  }
}
