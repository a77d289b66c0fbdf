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
#include <set>
#include <sstream>

#include "sysynth/model.hpp"

using namespace sysynth;

namespace {

ProblemInstance load_fixture(const std::string& name) {
  std::ifstream in(std::string(SYSYNTH_DATA_DIR) + "/" + name + ".json", std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_instance(buf.str());
}

// Two devices, one task compatible with both, one module around all three.
ProblemInstance two_device_instance(bool with_requirement) {
  std::string req = with_requirement ? R"("requirements": {"work": 1})" : "";
  return load_instance(R"({
    "dims": {"resources": [{"id": "cpu", "unit": "c"}], "transports": [],
             "context_dims": [], "function_dims": ["work"], "message_types": []},
    "devices": [{"id": "d1", "resources": {"cpu": 4}, "cost": 10},
                {"id": "d2", "resources": {"cpu": 2}, "cost": 8}],
    "tasks": [{"id": "p", "consumption": {"d1": {"cpu": 1}, "d2": {"cpu": 1}}}],
    "modules": [{"id": "m", "devices": ["d1", "d2"], "tasks": ["p"],
                 "capability": {"work": 1}, "overhead_cost": 5}],
    "mission": {)" + req + R"(}
  })");
}

Program build_fixture(const ProblemInstance& inst, FlowMode mode = FlowMode::kDirected) {
  auto conns = expand_connections(inst);
  auto links = expand_links(inst);
  BuildOptions options;
  options.flow_mode = mode;
  return build_program(inst, conns, links, options);
}

}  // namespace

TEST_CASE("two-device module: exactly six variables, no links or routes") {
  Program prog = build_fixture(two_device_instance(false));
  CHECK(prog.var_count() == 6);
  int dev = 0, assign = 0, cnx = 0, other = 0;
  for (const auto& v : prog.space.vars) {
    if (v.kind == VarKind::Dev) ++dev;
    else if (v.kind == VarKind::Assign) ++assign;
    else if (v.kind == VarKind::Cnx) ++cnx;
    else ++other;
  }
  CHECK(dev == 2);
  CHECK(assign == 2);
  CHECK(cnx == 2);  // the two loopbacks
  CHECK(other == 0);
}

TEST_CASE("every constraint carries a known family tag") {
  auto known = required_constraint_tags(FlowMode::kDirected);
  known.push_back(kTagPlumbing);
  for (const char* fixture : {"full_feature", "chain3", "sar_like"}) {
    Program prog = build_fixture(load_fixture(fixture));
    for (const auto& c : prog.constraints) {
      bool ok = false;
      for (const auto& tag : known)
        if (c.tag == tag) ok = true;
      if (!ok) CAPTURE(c.tag);
      CHECK(ok);
    }
  }
}

TEST_CASE("full-feature fixture triggers every constraint family") {
  for (FlowMode mode : {FlowMode::kDirected, FlowMode::kDummy}) {
    Program prog = build_fixture(load_fixture("full_feature"), mode);
    std::set<std::string> seen;
    for (const auto& c : prog.constraints) seen.insert(c.tag);
    for (const auto& tag : required_constraint_tags(mode)) {
      CAPTURE(tag);
      CHECK(seen.count(tag) == 1);
    }
  }
}

TEST_CASE("context dimension the mission lacks forces the task off") {
  auto inst = load_instance(R"({
    "dims": {"resources": [{"id": "cpu", "unit": "c"}], "transports": [],
             "context_dims": ["indoor", "outdoor"], "function_dims": [],
             "message_types": []},
    "devices": [{"id": "d", "resources": {"cpu": 1}}],
    "tasks": [{"id": "p", "consumption": {"d": {"cpu": 1}},
               "context_req": {"indoor": 1}}],
    "modules": [{"id": "m", "devices": ["d"], "tasks": ["p"]}],
    "mission": {"context": {"outdoor": 1}}
  })");
  Program prog = build_fixture(inst);
  bool found = false;
  for (const auto& c : prog.constraints) {
    if (c.tag != kTagContext) continue;
    found = true;
    CHECK(c.rel == Rel::Le);
    CHECK(c.rhs == Rat(0));  // s_indoor = 0 while y_indoor = 1
  }
  CHECK(found);
}

TEST_CASE("cost primitives match hand calculations") {
  auto inst = load_instance(R"({
    "dims": {"resources": [{"id": "cpu", "unit": "c"}, {"id": "mem", "unit": "g"}],
             "transports": [{"id": "eth", "bandwidth": 100, "overhead_factor": 1}],
             "context_dims": [], "function_dims": [], "message_types": ["m"]},
    "devices": [{"id": "d", "resources": {"cpu": 4, "mem": 8}, "cnx_capacity": {"eth": 1}},
                {"id": "e", "resources": {"cpu": 1}, "cnx_capacity": {"eth": 1}, "cost": 3}],
    "tasks": [{"id": "p", "consumption": {"d": {"cpu": 1, "mem": 2}},
               "outputs": [{"id": "o", "msg_type": "m", "nominal_rate": 2}]},
              {"id": "q", "consumption": {"e": {"cpu": 1}},
               "inputs": [{"id": "i", "msg_type": "m"}]}],
    "modules": [{"id": "m1", "devices": ["d", "e"], "tasks": ["p", "q"], "overhead_cost": 7}],
    "mission": {}
  })");
  CHECK(exec_cost(inst, 0, 0) == Rat(1, 2));  // 1/4 + 2/8
  auto conns = expand_connections(inst);
  auto links = expand_links(inst);
  REQUIRE(links.size() == 1);
  REQUIRE(!conns[0].is_loop);
  CHECK(route_cost(links[0], conns[0]) == Rat(1, 50));  // demand 2 over bandwidth 100
  CHECK(route_cost(links[0], conns.back()) == Rat(0));  // loops are free
  CHECK(module_cost(inst, inst.modules[0]) == Rat(10)); // overhead 7 + device 3
}

TEST_CASE("unbounded bandwidth routes at zero cost") {
  auto inst = load_fixture("full_feature");
  auto conns = expand_connections(inst);
  auto links = expand_links(inst);
  bool saw_unbounded = false;
  for (const auto& c : conns) {
    if (c.is_loop || c.bandwidth) continue;
    saw_unbounded = true;
    for (const auto& l : links) CHECK(route_cost(l, c) == Rat(0));
  }
  CHECK(saw_unbounded);
}

TEST_CASE("generation is deterministic") {
  auto inst = load_fixture("full_feature");
  Program a = build_fixture(inst);
  Program b = build_fixture(inst);
  CHECK(export_lp(a) == export_lp(b));
  CHECK(export_mps(a) == export_mps(b));
}

TEST_CASE("weight override rescales the objective") {
  auto inst = two_device_instance(true);
  auto conns = expand_connections(inst);
  auto links = expand_links(inst);
  BuildOptions options;
  options.weight_override = Weights{Rat(0), Rat(0), Rat(0)};
  Program prog = build_program(inst, conns, links, options);
  for (const auto& coef : prog.objective) CHECK(coef == Rat(0));
}

TEST_CASE("exposure-aware compatibility") {
  auto inst = load_instance(R"({
    "dims": {"resources": [{"id": "cpu", "unit": "c"}, {"id": "io", "unit": "p"}],
             "transports": [{"id": "usb", "bandwidth": 10, "overhead_factor": 1}],
             "context_dims": [], "function_dims": [], "message_types": []},
    "devices": [{"id": "pc", "resources": {"cpu": 4}, "cnx_capacity": {"usb": 1}},
                {"id": "sensor", "cnx_capacity": {"usb": 1}, "exposes": {"usb": {"io": 1}}},
                {"id": "island", "resources": {"cpu": 4}}],
    "tasks": [{"id": "driver", "consumption": {"pc": {"cpu": 1, "io": 1},
                                               "island": {"cpu": 1, "io": 1}}}],
    "modules": [{"id": "m", "devices": ["pc", "sensor", "island"], "tasks": ["driver"]}],
    "mission": {}
  })");
  auto conns = expand_connections(inst);
  auto exposable = exposure_matrix(inst, conns);
  // pc can be granted io over usb from the sensor; island has no transports.
  CHECK(device_task_compatible(inst, exposable, 0, 0));
  CHECK(!device_task_compatible(inst, exposable, 2, 0));
  // The io term carries no execution cost; only cpu does.
  CHECK(exec_cost(inst, 0, 0) == Rat(1, 4));
}

TEST_CASE("budget rows subtract incident exposures only") {
  Program prog = build_fixture(load_fixture("full_feature"));
  // mapper on pc2 consumes mem 4 against a local budget of 2; the lidar
  // exposure over eth must appear with a negative coefficient.
  int budget_rows_with_exposure = 0;
  for (const auto& c : prog.constraints) {
    if (c.tag != kTagResourceBudget) continue;
    bool has_negative = false;
    for (const auto& [v, coef] : c.terms)
      if (coef.is_negative()) {
        CHECK(prog.space.vars[v].kind == VarKind::Cnx);
        has_negative = true;
      }
    if (has_negative) ++budget_rows_with_exposure;
  }
  CHECK(budget_rows_with_exposure > 0);
}
