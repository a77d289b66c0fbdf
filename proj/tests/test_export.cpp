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

#include "support/readers.hpp"
#include "sysynth/model.hpp"

using namespace sysynth;
using sysynth::testing::ParsedProgram;

namespace {

ProblemInstance load_fixture(const std::string& name) {
  std::ifstream in(std::string(SYSYNTH_DATA_DIR) + "/" + name + ".json", std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_instance(buf.str());
}

Program build_fixture(const std::string& name, FlowMode mode = FlowMode::kDirected) {
  ProblemInstance inst = load_fixture(name);
  auto conns = expand_connections(inst);
  auto links = expand_links(inst);
  BuildOptions options;
  options.flow_mode = mode;
  return build_program(inst, conns, links, options);
}

// The program's own matrix, keyed the way the readers key theirs.
ParsedProgram reference_matrix(const Program& prog) {
  ParsedProgram ref;
  for (std::size_t i = 0; i < prog.var_count(); ++i)
    if (!prog.objective[i].is_zero())
      ref.objective[prog.var_names[i]] = prog.objective[i].to_double();
  for (std::size_t ci = 0; ci < prog.constraints.size(); ++ci) {
    std::string row = "c" + std::to_string(ci) + "_" + prog.constraints[ci].tag;
    for (const auto& [v, coef] : prog.constraints[ci].terms)
      ref.rows[row][prog.var_names[v]] = coef.to_double();
    ref.relations[row] = prog.constraints[ci].rel == Rel::Le   ? 'L'
                         : prog.constraints[ci].rel == Rel::Ge ? 'G'
                                                               : 'E';
    if (!prog.constraints[ci].rhs.is_zero())
      ref.rhs[row] = prog.constraints[ci].rhs.to_double();
  }
  return ref;
}

void check_same_matrix(const ParsedProgram& got, const ParsedProgram& want) {
  CHECK(got.objective == want.objective);
  REQUIRE(got.rows.size() == want.rows.size());
  for (const auto& [row, terms] : want.rows) {
    auto it = got.rows.find(row);
    REQUIRE(it != got.rows.end());
    CHECK(it->second == terms);
    CHECK(got.relations.at(row) == want.relations.at(row));
  }
  for (const auto& [row, bound] : want.rhs) CHECK(got.rhs.at(row) == doctest::Approx(bound));
}

}  // namespace

TEST_CASE("LP text structure") {
  Program prog = build_fixture("full_feature");
  std::string lp = export_lp(prog);
  CHECK(lp.find("Minimize") != std::string::npos);
  CHECK(lp.find("Subject To") != std::string::npos);
  CHECK(lp.find("Binaries") != std::string::npos);
  CHECK(lp.rfind("End\n") == lp.size() - 4);
  CHECK(lp.find(">=") != std::string::npos);  // the mission rows
  CHECK(lp.find("dev_pc1") != std::string::npos);
}

TEST_CASE("empty program exports valid, empty text") {
  ProblemInstance inst = load_instance(R"({
    "dims": {"resources": [], "transports": [], "context_dims": [],
             "function_dims": [], "message_types": []},
    "devices": [], "tasks": [], "modules": [], "mission": {}
  })");
  Program prog = build_program(inst, expand_connections(inst), expand_links(inst), {});
  CHECK(prog.var_count() == 0);
  std::string lp = export_lp(prog);
  CHECK(lp.find("Subject To") != std::string::npos);
  auto parsed = sysynth::testing::parse_lp(lp);
  CHECK(parsed.rows.empty());
  CHECK(parsed.objective.empty());
  std::string mps = export_mps(prog);
  CHECK(mps.find("ENDATA") != std::string::npos);
}

TEST_CASE("LP and MPS re-import to the generated matrix") {
  for (const char* fixture : {"full_feature", "chain3", "dependency"}) {
    for (FlowMode mode : {FlowMode::kDirected, FlowMode::kDummy}) {
      Program prog = build_fixture(fixture, mode);
      ParsedProgram want = reference_matrix(prog);

      ParsedProgram lp = sysynth::testing::parse_lp(export_lp(prog));
      check_same_matrix(lp, want);
      CHECK(lp.binaries.size() == prog.var_count());

      ParsedProgram mps = sysynth::testing::parse_mps(export_mps(prog));
      check_same_matrix(mps, want);
      CHECK(mps.binaries.size() == prog.var_count());
    }
  }
}

TEST_CASE("variable naming scheme is stable") {
  Program prog = build_fixture("chain3");
  std::set<std::string> names(prog.var_names.begin(), prog.var_names.end());
  CHECK(names.size() == prog.var_count());  // unique
  CHECK(names.count("dev_d1"));
  CHECK(names.count("asg_d1_src"));
  CHECK(names.count("cnx_eth_0"));
  CHECK(names.count("lnk_0"));
  CHECK(names.count("rte_0_0"));
  CHECK(names.count("arc_0_0_fwd"));
  CHECK(names.count("cnx_loopback_2"));
}
