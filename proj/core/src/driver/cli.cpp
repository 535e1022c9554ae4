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

#include "qforge/driver/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "qforge/driver/driver.hpp"
#include "qforge/driver/fixtures.hpp"
#include "qforge/frontend/ast.hpp"
#include "qforge/ir/printer.hpp"
#include "qforge/lowering/lir.hpp"
#include "qforge/runtime/interpreter.hpp"

namespace qforge::driver {

namespace {

struct Options {
  std::string input;
  std::string emit;
  int opt_level = 1;
  std::string backend = "estimator";
  std::uint64_t shots = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> passes;
  std::vector<int> bench_ns;
  int bench_reps = 5;
  std::string fixture;
  std::optional<int> qubits;
  std::optional<double> theta;
  bool no_rx_layer = false;
  int ccx_cost = 5;
  std::size_t qubit_cap = 22;
  std::string stats_format = "json";
};

std::string stats_text(const runtime::BackendStats &s, std::uint64_t shots, std::uint64_t seed) {
  std::ostringstream os;
  os << "controlled_ops_cx_crz: " << s.controlled_ops_cx_crz << "\n";
  for (const auto &[name, n] : s.per_gate) os << "per_gate." << name << ": " << n << "\n";
  os << "seed: " << seed << "\n"
     << "shots: " << shots << "\n"
     << "total_gates: " << s.total_gates << "\n";
  return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"qasm-forge: optimizing OpenQASM 3 compiler", "qasm-forge"};
  Options o;
  app.add_option("file", o.input, "OpenQASM 3 source file");
  app.add_option("--emit", o.emit, "Print a compilation stage instead of running")
      ->check(CLI::IsMember({"ast", "ir", "ir-opt", "lowered"}));
  app.add_option("-O", o.opt_level, "Optimization level (-O0 or -O1)")->check(CLI::IsMember({0, 1}));
  app.add_option("--backend", o.backend, "Execution backend")
      ->check(CLI::IsMember({"estimator", "statevector"}));
  app.add_option("--shots", o.shots, "Whole-program reruns")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Seed of the measurement generator");
  app.add_option("--pass", o.passes, "Run these passes once each instead of the pipeline")->delimiter(',');
  app.add_option("--bench-trotter", o.bench_ns, "Time compilation of the Trotter fixture per qubit count")
      ->delimiter(',');
  app.add_option("--bench-reps", o.bench_reps, "Repetitions per benchmark row")->check(CLI::PositiveNumber);
  app.add_option("--fixture", o.fixture, "Use a built-in program instead of a file")
      ->check(CLI::IsMember(fixture_names()));
  app.add_option("--qubits", o.qubits, "Qubit count of templated fixtures")->check(CLI::Range(2, 4096));
  app.add_option("--theta", o.theta, "Ansatz angle of the deuteron fixture");
  app.add_flag("--no-rx-layer", o.no_rx_layer, "Omit the rx layer of the heisenberg fixtures");
  app.add_option("--ccx-cost", o.ccx_cost, "Counted cost of the ccx decomposition (0 keeps ccx native)")
      ->check(CLI::IsMember({0, 5, 6, 7}));
  app.add_option("--qubit-cap", o.qubit_cap, "Statevector qubit limit");
  app.add_option("--stats-format", o.stats_format, "Statistics report format")
      ->check(CLI::IsMember({"json", "text"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitCompileError;
  }

  CompileOptions copts;
  copts.opt_level = o.opt_level;
  if (!o.passes.empty()) copts.passes = o.passes;

  if (!o.bench_ns.empty()) {
    try {
      out << bench_csv(bench_trotter(o.bench_ns, o.bench_reps, copts));
    } catch (const std::exception &e) {
      err << "error: " << e.what() << "\n";
      return kExitCompileError;
    }
    return kExitOk;
  }

  std::string source, name;
  if (!o.fixture.empty()) {
    FixtureParams p{o.qubits, o.theta, !o.no_rx_layer};
    source = *fixture_source(o.fixture, p);
    name = "<" + o.fixture + ">";
  } else if (!o.input.empty()) {
    std::ifstream in(o.input, std::ios::binary);
    if (!in) {
      err << o.input << ": error: cannot open file\n";
      return kExitCompileError;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    source = ss.str();
    name = o.input;
  } else {
    err << "error: no input file (see --help)\n";
    return kExitCompileError;
  }

  Stage stop = Stage::Lowered;
  if (o.emit == "ast") stop = Stage::Ast;
  else if (o.emit == "ir") stop = Stage::Ir;
  else if (o.emit == "ir-opt") stop = Stage::IrOpt;

  Compilation c;
  try {
    c = compile(source, stop, copts);
  } catch (const CompileFailed &e) {
    for (const auto &d : e.diagnostics()) err << d.format(name) << "\n";
    return kExitCompileError;
  } catch (const InternalError &e) {
    err << name << ": internal error: " << e.what() << "\n";
    return kExitCompileError;
  }

  if (o.emit == "ast") {
    out << frontend::dump(*c.ast);
    return kExitOk;
  }
  if (o.emit == "ir" || o.emit == "ir-opt") {
    out << ir::print_module(*c.module);
    return kExitOk;
  }
  if (o.emit == "lowered") {
    out << lowering::emit_text(c.lir);
    return kExitOk;
  }

  runtime::ExecutionConfig cfg;
  cfg.backend = o.backend == "statevector" ? runtime::BackendKind::Statevector : runtime::BackendKind::Estimator;
  cfg.shots = o.shots;
  cfg.seed = o.seed;
  cfg.ccx_cost = o.ccx_cost;
  cfg.qubit_cap = o.qubit_cap;
  try {
    auto result = runtime::execute(c.lir, cfg);
    out << result.output;
    if (o.stats_format == "text") out << stats_text(result.stats, cfg.shots, cfg.seed);
    else out << runtime::stats_json(result.stats, cfg.shots, cfg.seed) << "\n";
  } catch (const RuntimeError &e) {
    err << name << ": runtime error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  return kExitOk;
}

}  // namespace qforge::driver
