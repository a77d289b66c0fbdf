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

#include "sysynth/expansion.hpp"
#include "sysynth/gen.hpp"

using namespace sysynth;

namespace {

ProblemInstance three_ethernet_devices() {
  return load_instance(R"({
    "dims": {"resources": [], "transports":
             [{"id": "ethernet", "bandwidth": 100, "overhead_factor": 1}],
             "context_dims": [], "function_dims": [], "message_types": []},
    "devices": [{"id": "a", "cnx_capacity": {"ethernet": 2}},
                {"id": "b", "cnx_capacity": {"ethernet": 2}},
                {"id": "c", "cnx_capacity": {"ethernet": 2}}],
    "tasks": [], "modules": [{"id": "m", "devices": ["a", "b", "c"]}],
    "mission": {}
  })");
}

}  // namespace

TEST_CASE("dense pairs plus one loopback per device") {
  auto inst = three_ethernet_devices();
  auto conns = expand_connections(inst);
  REQUIRE(conns.size() == 6);  // C(3,2) pairs + 3 loopbacks
  int pairs = 0, loops = 0;
  for (const auto& c : conns) {
    if (c.is_loop) {
      ++loops;
      CHECK(c.dev_u == c.dev_v);
      CHECK(!c.bandwidth.has_value());
      CHECK(c.overhead == Rat(1));
    } else {
      ++pairs;
      CHECK(c.dev_u < c.dev_v);
    }
  }
  CHECK(pairs == 3);
  CHECK(loops == 3);
  // Loopbacks occupy the tail of the candidate order.
  CHECK(!conns[0].is_loop);
  CHECK(conns[5].is_loop);
}

TEST_CASE("one-sided capacity produces no candidate") {
  auto inst = load_instance(R"({
    "dims": {"resources": [], "transports":
             [{"id": "usb", "bandwidth": 10, "overhead_factor": 1}],
             "context_dims": [], "function_dims": [], "message_types": []},
    "devices": [{"id": "a", "cnx_capacity": {"usb": 1}}, {"id": "b"}],
    "tasks": [], "modules": [{"id": "m", "devices": ["a", "b"]}],
    "mission": {}
  })");
  auto conns = expand_connections(inst);
  CHECK(conns.size() == 2);  // loopbacks only
  CHECK(conns[0].is_loop);
  CHECK(conns[1].is_loop);
}

TEST_CASE("forbidden physical pair is excluded, loopbacks remain") {
  auto inst = three_ethernet_devices();
  inst.dims.transports[0].physical = true;
  inst.mission.cnx_forbidden.insert({0, 1});  // a--b
  auto conns = expand_connections(inst);
  CHECK(conns.size() == 5);
  for (const auto& c : conns)
    if (!c.is_loop) CHECK(!(c.dev_u == 0 && c.dev_v == 1));
}

TEST_CASE("non-physical media ignore the forbidden list") {
  auto inst = three_ethernet_devices();
  inst.dims.transports[0].physical = false;
  inst.mission.cnx_forbidden.insert({0, 1});
  CHECK(expand_connections(inst).size() == 6);
}

TEST_CASE("links pair matching message types across distinct tasks") {
  auto inst = load_instance(R"({
    "dims": {"resources": [], "transports": [], "context_dims": [],
             "function_dims": [], "message_types": ["pose", "image"]},
    "devices": [],
    "tasks": [
      {"id": "a", "outputs": [{"id": "o", "msg_type": "pose", "nominal_rate": 1}]},
      {"id": "b", "inputs": [{"id": "i", "msg_type": "pose"}]},
      {"id": "c", "inputs": [{"id": "i", "msg_type": "image"}]}
    ],
    "modules": [{"id": "m", "tasks": ["a", "b", "c"]}],
    "mission": {}
  })");
  auto links = expand_links(inst);
  REQUIRE(links.size() == 1);
  CHECK(links[0].src_task == 0);
  CHECK(links[0].snk_task == 1);
  CHECK(link_name(inst, links[0]) == "a.o->b.i");
}

TEST_CASE("no self-links for a task that could feed itself") {
  auto inst = load_instance(R"({
    "dims": {"resources": [], "transports": [], "context_dims": [],
             "function_dims": [], "message_types": ["pose"]},
    "devices": [],
    "tasks": [{"id": "a",
               "inputs": [{"id": "i", "msg_type": "pose"}],
               "outputs": [{"id": "o", "msg_type": "pose", "nominal_rate": 1}]}],
    "modules": [{"id": "m", "tasks": ["a"]}],
    "mission": {}
  })");
  CHECK(expand_links(inst).empty());
}

TEST_CASE("two mutual producers yield both directed candidates") {
  auto inst = load_instance(R"({
    "dims": {"resources": [], "transports": [], "context_dims": [],
             "function_dims": [], "message_types": ["pose"]},
    "devices": [],
    "tasks": [
      {"id": "a", "inputs": [{"id": "i", "msg_type": "pose"}],
       "outputs": [{"id": "o", "msg_type": "pose", "nominal_rate": 1}]},
      {"id": "b", "inputs": [{"id": "i", "msg_type": "pose"}],
       "outputs": [{"id": "o", "msg_type": "pose", "nominal_rate": 1}]}
    ],
    "modules": [{"id": "m", "tasks": ["a", "b"]}],
    "mission": {}
  })");
  auto links = expand_links(inst);
  REQUIRE(links.size() == 2);
  CHECK(link_name(inst, links[0]) == "a.o->b.i");
  CHECK(link_name(inst, links[1]) == "b.o->a.i");
}

TEST_CASE("expansion bounds and determinism over random instances") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    spec.devices = (int)(seed % 5);
    spec.tasks = (int)(seed % 4);
    spec.modules = 3;
    spec.transports = 1 + (int)(seed % 3);
    ProblemInstance inst = generate(spec);
    REQUIRE(validate_instance(inst).empty());
    auto conns = expand_connections(inst);
    auto links = expand_links(inst);

    const std::size_t D = inst.devices.size();
    const std::size_t X = inst.dims.transports.size();
    CHECK(conns.size() <= X * D * (D > 0 ? D - 1 : 0) / 2 + D);
    std::size_t outs = 0, ins = 0;
    for (const auto& t : inst.tasks) {
      outs += t.outputs.size();
      ins += t.inputs.size();
    }
    CHECK(links.size() <= outs * ins);
    for (const auto& l : links) {
      CHECK(l.src_task != l.snk_task);
      CHECK(inst.tasks[l.src_task].outputs[l.src_output].msg_type ==
            inst.tasks[l.snk_task].inputs[l.snk_input].msg_type);
    }

    auto conns2 = expand_connections(inst);
    auto links2 = expand_links(inst);
    REQUIRE(conns2.size() == conns.size());
    REQUIRE(links2.size() == links.size());
    for (std::size_t i = 0; i < conns.size(); ++i) {
      CHECK(conns[i].dev_u == conns2[i].dev_u);
      CHECK(conns[i].dev_v == conns2[i].dev_v);
      CHECK(conns[i].transport == conns2[i].transport);
    }
    for (std::size_t i = 0; i < links.size(); ++i) {
      CHECK(links[i].src_task == links2[i].src_task);
      CHECK(links[i].snk_input == links2[i].snk_input);
    }
  }
}

TEST_CASE("link demand scales the nominal rate by transport overhead") {
  auto inst = three_ethernet_devices();
  inst.dims.transports[0].overhead_factor = Rat(6, 5);
  auto conns = expand_connections(inst);
  CandidateLink link;
  link.nominal_rate = Rat(10);
  CHECK(link_demand(link, conns[0]) == Rat(12));
  CHECK(link_demand(link, conns.back()) == Rat(10));  // loopback overhead 1
}
