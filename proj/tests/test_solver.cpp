// Copyright 2026 The sysynth Authors
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

#include <doctest.h>

#include <fstream>
#include <sstream>

#include "support/suite.hpp"
#include "sysynth/solver.hpp"
#include "sysynth/verify.hpp"

using namespace sysynth;

namespace {

ProblemInstance load_fixture(const std::string& name) {
  std::ifstream in(std::string(SYSYNTH_DATA_DIR) + "/" + name + ".json", std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_instance(buf.str());
}

struct Built {
  ProblemInstance inst;
  std::vector<CandidateConnection> conns;
  std::vector<CandidateLink> links;
  Program prog;
};

Built build(const std::string& fixture, FlowMode mode = FlowMode::kDirected) {
  Built b;
  b.inst = load_fixture(fixture);
  b.conns = expand_connections(b.inst);
  b.links = expand_links(b.inst);
  BuildOptions options;
  options.flow_mode = mode;
  b.prog = build_program(b.inst, b.conns, b.links, options);
  return b;
}

ProblemInstance two_device_with_requirement() {
  return load_instance(R"({
    "dims": {"resources": [{"id": "cpu", "unit": "c"}], "transports": [],
             "context_dims": [], "function_dims": ["work"], "message_types": []},
    "devices": [{"id": "d1", "resources": {"cpu": 4}, "cost": 10},
                {"id": "d2", "resources": {"cpu": 2}, "cost": 8}],
    "tasks": [{"id": "p", "consumption": {"d1": {"cpu": 1}, "d2": {"cpu": 1}}}],
    "modules": [{"id": "m", "devices": ["d1", "d2"], "tasks": ["p"],
                 "capability": {"work": 1}, "overhead_cost": 5}],
    "mission": {"requirements": {"work": 1}}
  })");
}

}  // namespace

TEST_CASE("forced module: optimum matches exhaustive enumeration") {
  ProblemInstance inst = two_device_with_requirement();
  auto conns = expand_connections(inst);
  auto links = expand_links(inst);
  Program prog = build_program(inst, conns, links, {});
  Solution sol = solve(prog);
  REQUIRE(sol.status == SolveStatus::kOptimal);

  OracleResult oracle = brute_force(inst, conns, links, prog.space);
  REQUIRE(oracle.feasible);
  CHECK(sol.objective == oracle.objective);
  // Both devices active, the task on d1 (cpu 4 gives exec 0.25 vs 0.5).
  CHECK(sol.values[prog.space.dev(0)] == 1);
  CHECK(sol.values[prog.space.dev(1)] == 1);
  CHECK(sol.values[prog.space.assign(0, 0)] == 1);
  CHECK(sol.objective == Rat(23) + Rat(1, 4));
  std::uint32_t mask = semantic_mask(prog.space, sol.values);
  bool in_optima = false;
  for (auto m : oracle.optimal_masks) in_optima |= (m == mask);
  CHECK(in_optima);
}

TEST_CASE("unreachable requirement is proven infeasible") {
  Built b = build("infeasible");
  Solution sol = solve(b.prog);
  CHECK(sol.status == SolveStatus::kInfeasible);
  CHECK(sol.values.empty());
}

TEST_CASE("empty program is trivially optimal at zero") {
  ProblemInstance inst = load_instance(R"({
    "dims": {"resources": [], "transports": [], "context_dims": [],
             "function_dims": [], "message_types": []},
    "devices": [], "tasks": [], "modules": [], "mission": {}
  })");
  Program prog = build_program(inst, expand_connections(inst), expand_links(inst), {});
  Solution sol = solve(prog);
  CHECK(sol.status == SolveStatus::kOptimal);
  CHECK(sol.objective == Rat(0));
}

TEST_CASE("propagation: inactive device disables its assignments") {
  ProblemInstance inst = two_device_with_requirement();
  inst.mission.requirements[0] = Rat(0);  // keep every completion open
  auto conns = expand_connections(inst);
  auto links = expand_links(inst);
  Program prog = build_program(inst, conns, links, {});
  auto out = propagate(prog, {{prog.space.dev(0), false}});
  REQUIRE(!out.conflict);
  bool fixed_assign = false;
  for (const auto& [var, val] : out.fixings)
    if (var == prog.space.assign(0, 0)) {
      CHECK(val == false);
      fixed_assign = true;
    }
  CHECK(fixed_assign);
}

TEST_CASE("propagation: one active task pulls in its whole module") {
  Built b = build("full_feature");
  int driver = b.inst.task_index("driver");
  int pc1 = b.inst.device_index("pc1");
  (void)pc1;
  int lidar = b.inst.device_index("lidar");
  int mapper = b.inst.task_index("mapper");
  int av = b.prog.space.assign(pc1, driver);
  REQUIRE(av >= 0);
  auto out = propagate(b.prog, {{av, true}});
  REQUIRE(!out.conflict);
  // The module's device members are forced on outright. Task members only
  // gain a forced assignment sum, which single-variable propagation cannot
  // pin to a device, so no mapper fixing is expected here.
  bool lidar_on = false;
  for (const auto& [var, val] : out.fixings) {
    const VarId& v = b.prog.space.vars[var];
    if (v.kind == VarKind::Dev && v.a == lidar && val) lidar_on = true;
    (void)mapper;
  }
  CHECK(lidar_on);
}

TEST_CASE("propagation: exhausted budget is a conflict") {
  Built b = build("full_feature");
  int pc2 = b.inst.device_index("pc2");
  int driver = b.inst.task_index("driver");
  int planner = b.inst.task_index("planner");
  int mapper = b.inst.task_index("mapper");
  // pc2 has cpu 2; driver+planner+mapper want 1+1+1.
  auto out = propagate(b.prog, {{b.prog.space.assign(pc2, driver), true},
                                {b.prog.space.assign(pc2, planner), true},
                                {b.prog.space.assign(pc2, mapper), true}});
  CHECK(out.conflict);
}

TEST_CASE("lower bound: fixed points and module cover") {
  ProblemInstance inst = load_instance(R"({
    "dims": {"resources": [], "transports": [], "context_dims": [],
             "function_dims": ["f"], "message_types": []},
    "devices": [{"id": "a", "cost": 5}, {"id": "b", "cost": 7}],
    "tasks": [],
    "modules": [{"id": "ma", "devices": ["a"], "capability": {"f": 1}},
                {"id": "mb", "devices": ["b"], "capability": {"f": 1}}],
    "mission": {"requirements": {"f": 1}}
  })");
  auto conns = expand_connections(inst);
  auto links = expand_links(inst);
  Program prog = build_program(inst, conns, links, {});

  auto empty_bound = lower_bound(prog, {});
  REQUIRE(empty_bound.has_value());
  CHECK(*empty_bound >= Rat(5));
  Solution sol = solve(prog);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(*empty_bound <= sol.objective);
  CHECK(sol.objective == Rat(5));

  // Full assignments evaluate exactly.
  std::vector<std::pair<int, bool>> all;
  for (std::size_t i = 0; i < prog.var_count(); ++i) all.emplace_back((int)i, sol.values[i] == 1);
  auto full = lower_bound(prog, all);
  REQUIRE(full.has_value());
  CHECK(*full == sol.objective);

  // No requirements: the empty bound collapses to zero.
  ProblemInstance free_inst = inst;
  free_inst.mission.requirements[0] = Rat(0);
  Program free_prog = build_program(free_inst, conns, links, {});
  CHECK(*lower_bound(free_prog, {}) == Rat(0));
}

TEST_CASE("lower bound is admissible along optimal prefixes") {
  auto suite = sysynth::testing::tiny_suite(25);
  for (const auto& t : suite) {
    Program prog = build_program(t.inst, t.conns, t.links, {});
    Solution sol = solve(prog);
    if (sol.status != SolveStatus::kOptimal) continue;
    std::vector<std::pair<int, bool>> prefix;
    for (std::size_t i = 0; i < prog.var_count(); ++i) {
      prefix.emplace_back((int)i, sol.values[i] == 1);
      auto bound = lower_bound(prog, prefix);
      REQUIRE(bound.has_value());
      CHECK(*bound <= sol.objective);
    }
  }
}

TEST_CASE("deterministic mode repeats byte-identically") {
  Built b = build("full_feature");
  Solution a = solve(b.prog);
  Solution c = solve(b.prog);
  CHECK(a.status == c.status);
  CHECK(a.objective == c.objective);
  CHECK(a.values == c.values);
  CHECK(a.stats.nodes == c.stats.nodes);
  CHECK(a.stats.propagations == c.stats.propagations);
}

TEST_CASE("optimal vectors satisfy the independent checker") {
  for (const char* fixture : {"minimal", "full_feature", "chain3", "dependency", "context_gate"}) {
    for (FlowMode mode : {FlowMode::kDirected, FlowMode::kDummy}) {
      Built b = build(fixture, mode);
      Solution sol = solve(b.prog);
      REQUIRE(sol.status == SolveStatus::kOptimal);
      CheckReport report = check_solution(b.inst, b.conns, b.links, b.prog.space, sol.values);
      if (!report.ok)
        for (const auto& v : report.violations) CAPTURE(v.tag + " " + v.element + " " + v.detail);
      CHECK(report.ok);
    }
  }
}

TEST_CASE("node limit yields a timeout status") {
  Built b = build("sar_like");
  SolverConfig config;
  config.node_limit = 1;
  Solution sol = solve(b.prog, config);
  CHECK((sol.status == SolveStatus::kTimeoutNone ||
         sol.status == SolveStatus::kTimeoutIncumbent));
}

TEST_CASE("parallel mode agrees on the optimal objective") {
  Built b = build("chain3");
  Solution det = solve(b.prog);
  SolverConfig config;
  config.deterministic = false;
  Solution par = solve(b.prog, config);
  REQUIRE(det.status == SolveStatus::kOptimal);
  REQUIRE(par.status == SolveStatus::kOptimal);
  CHECK(par.objective == det.objective);
}

TEST_CASE("lexicographically least optimum under zero weights") {
  // All-zero weights make every feasible vector optimal; the deterministic
  // tie-break must then return the least vector, which activates nothing
  // beyond what feasibility forces.
  ProblemInstance inst = load_fixture("minimal");
  auto conns = expand_connections(inst);
  auto links = expand_links(inst);
  BuildOptions options;
  options.weight_override = Weights{Rat(0), Rat(0), Rat(0)};
  Program prog = build_program(inst, conns, links, options);
  Solution sol = solve(prog);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(sol.objective == Rat(0));
  for (std::size_t i = 0; i < prog.var_count(); ++i) CHECK(sol.values[i] == 0);
}
