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

// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "harness.hpp"
#include "oracle.hpp"
#include "qforge/driver/cli.hpp"
#include "qforge/driver/driver.hpp"
#include "qforge/driver/fixtures.hpp"
#include "qforge/lowering/lir.hpp"
#include "qforge/ir/printer.hpp"
#include "random_programs.hpp"

using namespace qforge;
using namespace qforge::testing;
namespace fs = std::filesystem;

namespace {

constexpr double kTol = 1e-9;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string &why) {
    if (!ok && pass) detail = why;
    pass = pass && ok;
  }
};

struct CliRun {
  int code = 0;
  std::string out, err;
};

CliRun cli(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = driver::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string read_file(const fs::path &p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char *f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string ir_opt(const std::string &source, const driver::CompileOptions &opts = {}) {
  return ir::print_module(*driver::compile(source, driver::Stage::IrOpt, opts).module);
}

Outcome cancel_pipeline() {
  Outcome o;
  auto text = ir_opt(driver::cancel_source());
  o.require(text == "func @main() {\n  return\n}\n", "unexpected IR:\n" + text);
  return o;
}

Outcome peephole_goldens() {
  Outcome o;
  int cases = 0;
  std::vector<fs::path> files;
  for (const auto &e : fs::directory_iterator(QFORGE_GOLDEN_DIR))
    if (e.path().extension() == ".qasm" && e.path().stem().string().rfind("peephole_", 0) == 0) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto &p : files) {
    auto want = read_file(fs::path(p).replace_extension(".ir"));
    auto got = ir_opt(read_file(p));
    o.require(got == want, p.stem().string() + " differs");
    ++cases;
  }
  o.require(cases >= 5, "too few golden cases");
  o.detail = o.pass ? std::to_string(cases) + " goldens" : o.detail;
  return o;
}

Outcome pass_soundness() {
  Outcome o;
  std::mt19937_64 rng(0x5eed);
  const std::vector<std::string> passes{"inline",   "unroll",  "const-prop",         "identity-pairs", "merge",
                                        "permute",  "simplify-sequences", "extract-lifting", "dce"};
  double worst = 0.0;
  for (int i = 0; i < 500 && o.pass; ++i) {
    auto p = random_program(rng, 5, 40);
    auto want = unitary(p.num_qubits, p.circuit);
    auto check = [&](const driver::CompileOptions &opts, const std::string &label) {
      auto t = trace_program(p.source, opts);
      double d = phase_distance(unitary(p.num_qubits, t.circuit), want);
      worst = std::max(worst, d);
      // A register whose gates all cancel is dropped entirely, which is the identity on it.
      bool sized = t.num_qubits == p.num_qubits || (t.num_qubits == 0 && t.circuit.empty());
      o.require(sized && d <= kTol, label + " broke program " + std::to_string(i) + ":\n" + p.source);
    };
    for (const auto &name : passes) check(with_passes({name}), name);
    check(at_level(1), "pipeline");
  }
  if (o.pass) o.detail = "500 programs, worst deviation " + fmt("%.2e", worst);
  return o;
}

double deuteron_estimate(double theta, std::uint64_t seed) {
  auto r = cli({"--fixture=deuteron", "--backend=statevector", "--theta=" + fmt("%.17g", theta),
                "--seed=" + std::to_string(seed), "--stats-format=text"});
  const std::string key = "Avg <X0X1> = ";
  if (r.code != 0 || r.out.rfind(key, 0) != 0) return std::nan("");
  return std::stod(r.out.substr(key.size()));
}

Outcome deuteron() {
  Outcome o;
  auto within = [](double theta, double got) {
    double sigma = std::sqrt((1.0 - std::sin(theta) * std::sin(theta)) / 1024.0);
    return std::abs(got - std::sin(theta)) <= 3.0 * sigma;
  };
  double got = deuteron_estimate(0.123, 1);
  o.require(within(0.123, got), "theta=0.123 gave " + fmt("%.5f", got));
  for (int k = 0; k < 10; ++k) {
    double theta = -1.4 + 2.8 * k / 9.0;
    double v = deuteron_estimate(theta, 1000 + static_cast<std::uint64_t>(k));
    o.require(within(theta, v), "theta=" + fmt("%.4f", theta) + " gave " + fmt("%.5f", v));
  }
  if (o.pass) o.detail = "<X0X1>(0.123) = " + fmt("%.5f", got) + ", sweep of 10 within 3 sigma";
  return o;
}

nlohmann::json estimate(std::vector<std::string> args) {
  args.push_back("--backend=estimator");
  auto r = cli(args);
  if (r.code != 0) return nlohmann::json::object();
  return nlohmann::json::parse(r.out);
}

Outcome trotter_counts() {
  Outcome o;
  for (int n : {5, 10, 50}) {
    auto j = estimate({"--fixture=trotter", "--qubits=" + std::to_string(n)});
    long want = 100L * (n + 3 * (n - 1));
    long got = j.value("total_gates", -1L);
    o.require(got == want, "n=" + std::to_string(n) + ": " + std::to_string(got) + " != " + std::to_string(want));
  }
  if (o.pass) o.detail = "1700 / 3700 / 19700";
  return o;
}

long jz_count(const std::string &fixture, int n, int ccx_cost) {
  auto j = estimate({"--fixture=" + fixture, "--qubits=" + std::to_string(n), "--no-rx-layer",
                     "--ccx-cost=" + std::to_string(ccx_cost)});
  return j.value("controlled_ops_cx_crz", -1L);
}

Outcome compute_action_synthesis() {
  Outcome o;
  double min_ratio = 1e9;
  for (int n = 6; n <= 50; ++n) {
    long ca = jz_count("heisenberg", n, 5);
    long manual = jz_count("heisenberg-manual", n, 5);
    o.require(ca == 300L * (n - 1), "(a) n=" + std::to_string(n) + ": " + std::to_string(ca));
    double ratio = static_cast<double>(manual) / static_cast<double>(ca);
    min_ratio = std::min(min_ratio, ratio);
    o.require(manual > ca && ratio >= 2.5, "(b) n=" + std::to_string(n) + " ratio " + fmt("%.3f", ratio));
  }
  std::string c_detail;
  for (auto [n, ref] : {std::pair{6, 7700.0}, std::pair{50, 73700.0}}) {
    long got = jz_count("heisenberg-manual", n, 7);
    double rel = std::abs(got - ref) / ref;
    c_detail += " n=" + std::to_string(n) + ":" + std::to_string(got) + "(" + fmt("%.1f", 100 * rel) + "%)";
    o.require(rel <= 0.05, "(c) n=" + std::to_string(n) + " count " + std::to_string(got) + " vs " + fmt("%.0f", ref));
  }
  if (o.pass) o.detail = "min ratio " + fmt("%.2f", min_ratio) + ";" + c_detail;
  return o;
}

double best_compile_time(int n, int reps) {
  auto src = driver::trotter_source(n);
  double best = 1e9;
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    auto c = driver::compile(src, driver::Stage::Lowered);
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

Outcome flatness() {
  Outcome o;
  best_compile_time(5, 3);  // warm-up
  double t5 = best_compile_time(5, 30);
  double t50 = best_compile_time(50, 30);
  double ratio = t50 / t5;
  o.require(ratio <= 2.0, "ratio " + fmt("%.2f", ratio));
  o.detail = "t(5)=" + fmt("%.2e", t5) + "s t(50)=" + fmt("%.2e", t50) + "s ratio " + fmt("%.2f", ratio);
  return o;
}

std::string region_program(int n, const Circuit &prep, const Circuit &region, const std::string &stmt,
                           const std::string &control_prep) {
  std::string s = "OPENQASM 3;\ninclude \"stdgates.inc\";\n";
  s += "def r qubit[" + std::to_string(n) + "]:a {\n" + circuit_body(region, "a") + "}\n";
  s += "qubit q[" + std::to_string(n) + "];\nqubit c;\n";
  s += circuit_body(prep) + control_prep + stmt + "\n";
  return s;
}

Outcome region_synthesis() {
  Outcome o;
  std::mt19937_64 rng(0xacce55);
  double worst = 0.0;
  for (int i = 0; i < 200 && o.pass; ++i) {
    int n = std::uniform_int_distribution<int>(1, 4)(rng);
    CircuitOptions copts;
    copts.num_qubits = n;
    copts.gate_set = full_gate_set();
    copts.num_gates = std::uniform_int_distribution<int>(1, 8)(rng);
    auto region = random_circuit(rng, copts);
    copts.num_gates = 6;
    copts.gate_set = {"h", "rx", "ry", "t", "cx"};
    auto prep = random_circuit(rng, copts);

    // Register q holds bits 0..n-1 and the control c is bit n.
    Circuit want = prep;
    std::string stmt, cprep;
    int kind = i % 4;
    if (kind == 0) {
      stmt = "r q;\ninv @ r q;";
    } else if (kind == 1) {
      stmt = "ctrl @ r c, q;";
    } else if (kind == 2) {
      cprep = "x c;\n";
      stmt = "ctrl @ r c, q;";
      want.push_back({"x", {n}, {}});
      for (const auto &g : region) want.push_back(g);
    } else {
      int k = std::uniform_int_distribution<int>(-2, 3)(rng);
      stmt = "pow(" + std::to_string(k) + ") @ r q;";
      auto step = k < 0 ? inverse(region) : region;
      for (int rep = 0; rep < std::abs(k); ++rep)
        for (const auto &g : step) want.push_back(g);
    }
    auto src = region_program(n, prep, region, stmt, cprep);
    auto got = final_state(src, at_level(1), 5, 1);
    auto expected = run(n + 1, want);
    // An unused control register is optimized away; it would have stayed in |0>.
    if (got.size() < expected.size()) got.resize(expected.size(), 0.0);
    double d = got.size() == expected.size() ? phase_distance(got, expected) : 1.0;
    worst = std::max(worst, d);
    o.require(d <= kTol, "region " + std::to_string(i) + " deviates by " + fmt("%.2e", d) + ":\n" + src);
  }
  if (o.pass) o.detail = "200 regions, worst deviation " + fmt("%.2e", worst);
  return o;
}

Outcome ghz_lowering() {
  Outcome o;
  auto text = lowering::emit_text(driver::compile(driver::ghz_source()).lir);
  o.require(text == read_file(fs::path(QFORGE_GOLDEN_DIR) / "ghz.lowered"), "golden mismatch:\n" + text);
  auto count = [&](const std::string &needle) {
    std::size_t n = 0;
    for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
    return n;
  };
  o.require(count("call void @__quantum__qis__h(") == 1, "h calls");
  o.require(count("call void @__quantum__qis__cnot(") == 2, "cnot calls");
  auto alloc = text.find("= call %Array* @__quantum__rt__qubit_allocate_array");
  auto h = text.find("call void @__quantum__qis__h(");
  auto release = text.find("call void @__quantum__rt__qubit_release_array");
  auto fin = text.find("call void @__quantum__rt__finalize");
  o.require(alloc < h && h < release && release < fin && fin != std::string::npos, "call order");
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> runs{
      {"--fixture=deuteron", "--backend=statevector", "--seed=42"},
      {"--fixture=deuteron", "--backend=statevector", "--seed=42", "--stats-format=text"},
      {"--fixture=heisenberg", "--qubits=8", "--backend=estimator"},
      {"--fixture=trotter", "--qubits=10", "--backend=estimator"},
      {"--fixture=deuteron", "--emit=ir"},
      {"--fixture=deuteron", "--emit=ir-opt"},
      {"--fixture=heisenberg", "--emit=ir-opt"},
      {"--fixture=compute-action", "--emit=lowered"},
  };
  for (const auto &args : runs) {
    auto a = cli(args), b = cli(args);
    std::string label = args[0] + " " + args[1];
    o.require(a.code == 0 && !a.out.empty(), label + " failed: " + a.err);
    o.require(a.out == b.out, label + " differs between runs");
  }
  return o;
}

struct Criterion {
  const char *name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"cancel pipeline reduces main to return", 1, cancel_pipeline},
      {"peephole rule goldens", 1, peephole_goldens},
      {"pass soundness on 500 random programs", 60, pass_soundness},
      {"deuteron expectation within 3 sigma", 10, deuteron},
      {"trotter resource counts", 5, trotter_counts},
      {"compute-action controlled synthesis", 30, compute_action_synthesis},
      {"compile-time flatness n=50 vs n=5", 30, flatness},
      {"region synthesis properties", 30, region_synthesis},
      {"ghz lowering golden", 1, ghz_lowering},
      {"determinism", 5, determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto &c = criteria[i];
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double t = seconds_since(t0);
    if (t > c.budget_s) o.require(false, "took " + fmt("%.2f", t) + "s, budget " + fmt("%.0f", c.budget_s) + "s");
    failures += !o.pass;
    std::printf("%s %2zu %s [%.3fs]%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, c.name, t, o.detail.empty() ? "" : ": ",
                o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
