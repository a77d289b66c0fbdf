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

#include "sysynth/catalog.hpp"

using namespace sysynth;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kMinimalDoc = R"({
  "dims": {"resources": [], "transports": [], "context_dims": [],
           "function_dims": [], "message_types": []},
  "devices": [{"id": "pc"}],
  "tasks": [],
  "modules": [{"id": "m", "devices": ["pc"]}],
  "mission": {}
})";

}  // namespace

TEST_CASE("minimal well-formed document") {
  ProblemInstance inst = load_instance(kMinimalDoc);
  CHECK(inst.devices.size() == 1);
  CHECK(inst.tasks.size() == 0);
  CHECK(inst.modules.size() == 1);
  CHECK(validate_instance(inst).empty());
}

TEST_CASE("unknown device reference is named in the error") {
  std::string doc = R"({
    "dims": {"resources": [{"id": "cpu", "unit": "c"}], "transports": [],
             "context_dims": [], "function_dims": [], "message_types": []},
    "devices": [{"id": "pc", "resources": {"cpu": 1}}],
    "tasks": [{"id": "t", "consumption": {"pc9": {"cpu": 1}}}],
    "modules": [{"id": "m", "devices": ["pc"], "tasks": ["t"]}],
    "mission": {}
  })";
  CHECK_THROWS_WITH_AS(load_instance(doc),
                       doctest::Contains("pc9"), ReferenceError);
}

TEST_CASE("parse and shape errors") {
  CHECK_THROWS_AS(load_instance("{not json"), ParseError);
  CHECK_THROWS_AS(load_instance("[]"), ParseError);
  std::string dup = kMinimalDoc;
  dup.replace(dup.find("[{\"id\": \"pc\"}]"), 14, "[{\"id\": \"pc\"}, {\"id\": \"pc\"}]");
  CHECK_THROWS_AS(load_instance(dup), ParseError);
  std::string bad_weights = kMinimalDoc;
  bad_weights.insert(bad_weights.rfind('}'), ", \"weights\": [1, 2]");
  CHECK_THROWS_AS(load_instance(bad_weights), ShapeError);
  std::string reserved = kMinimalDoc;
  reserved.replace(reserved.find("\"transports\": []"), 16,
                   "\"transports\": [{\"id\": \"loopback\", \"bandwidth\": 1}]");
  CHECK_THROWS_AS(load_instance(reserved), ParseError);
}

TEST_CASE("unbounded bandwidth and weights round through") {
  std::string doc = R"({
    "dims": {"resources": [], "transports":
             [{"id": "wifi", "bandwidth": "unbounded", "overhead_factor": 1.5}],
             "context_dims": [], "function_dims": [], "message_types": []},
    "devices": [], "tasks": [], "modules": [],
    "mission": {}, "weights": [2, 0.5, 1]
  })";
  ProblemInstance inst = load_instance(doc);
  CHECK(!inst.dims.transports[0].bandwidth.has_value());
  CHECK(inst.dims.transports[0].overhead_factor == Rat(3, 2));
  CHECK(inst.weights.module_cost == Rat(2));
  CHECK(inst.weights.exec == Rat(1, 2));
}

TEST_CASE("serialize then load is the identity on the model") {
  for (const char* name : {"minimal", "full_feature", "chain3", "sar_like", "escher_like"}) {
    ProblemInstance a = load_instance(slurp(std::string(SYSYNTH_DATA_DIR) + "/" + name + ".json"));
    std::string canon = serialize_instance(a);
    ProblemInstance b = load_instance(canon);
    CHECK(serialize_instance(b) == canon);
    CHECK(instance_digest(a) == instance_digest(b));
  }
}

TEST_CASE("validate: module overlap and unpartitioned elements") {
  std::string doc = R"({
    "dims": {"resources": [], "transports": [], "context_dims": [],
             "function_dims": [], "message_types": []},
    "devices": [{"id": "imu"}, {"id": "pc"}],
    "tasks": [{"id": "t"}],
    "modules": [{"id": "m1", "devices": ["imu"]}, {"id": "m2", "devices": ["imu"]}],
    "mission": {}
  })";
  ProblemInstance inst = load_instance(doc);
  auto violations = validate_instance(inst);
  REQUIRE(!violations.empty());
  bool overlap = false, unpartitioned_pc = false, unpartitioned_task = false;
  for (const auto& v : violations) {
    if (v.code == "MODULE_OVERLAP" && v.element == "imu") overlap = true;
    if (v.code == "UNPARTITIONED_ELEMENT" && v.element == "pc") unpartitioned_pc = true;
    if (v.code == "UNPARTITIONED_ELEMENT" && v.element == "t") unpartitioned_task = true;
  }
  CHECK(overlap);
  CHECK(unpartitioned_pc);
  CHECK(unpartitioned_task);
}

TEST_CASE("validate is pure and order-stable") {
  ProblemInstance inst = load_instance(slurp(std::string(SYSYNTH_DATA_DIR) + "/full_feature.json"));
  inst.modules[0].devices.push_back(1);  // pc1 now in two modules
  auto first = validate_instance(inst);
  auto second = validate_instance(inst);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].code == second[i].code);
    CHECK(first[i].element == second[i].element);
  }
}

TEST_CASE("validate: negative entries and overhead bounds") {
  ProblemInstance inst = load_instance(kMinimalDoc);
  inst.dims.transports.push_back({"x", Rat(-1), Rat(1, 2), true});
  auto violations = validate_instance(inst);
  int negative = 0, overhead = 0;
  for (const auto& v : violations) {
    if (v.code == "NEGATIVE_ENTRY") ++negative;
    if (v.code == "OVERHEAD_BELOW_ONE") ++overhead;
  }
  CHECK(negative >= 1);
  CHECK(overhead == 1);
}

TEST_CASE("shipped catalogs have the study shapes and validate cleanly") {
  ProblemInstance sar = load_instance(slurp(std::string(SYSYNTH_DATA_DIR) + "/sar_like.json"));
  CHECK(sar.devices.size() == 19);
  CHECK(sar.tasks.size() == 25);
  CHECK(sar.modules.size() == 29);
  CHECK(validate_instance(sar).empty());

  ProblemInstance esc = load_instance(slurp(std::string(SYSYNTH_DATA_DIR) + "/escher_like.json"));
  CHECK(esc.devices.size() == 18);
  CHECK(esc.tasks.size() == 36);
  CHECK(esc.modules.size() == 12);
  CHECK(validate_instance(esc).empty());
}

TEST_CASE("partition accounting matches the index sets") {
  ProblemInstance inst = load_instance(slurp(std::string(SYSYNTH_DATA_DIR) + "/sar_like.json"));
  REQUIRE(validate_instance(inst).empty());
  std::size_t devices = 0, tasks = 0;
  for (const auto& m : inst.modules) {
    devices += m.devices.size();
    tasks += m.tasks.size();
  }
  CHECK(devices == inst.devices.size());
  CHECK(tasks == inst.tasks.size());
}
