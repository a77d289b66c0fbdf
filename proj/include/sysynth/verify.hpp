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

#ifndef SYSYNTH_VERIFY_HPP
#define SYSYNTH_VERIFY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sysynth/model.hpp"

namespace sysynth {

// Tag used by the checker for a route assigned to an inactive link; the
// remaining violation tags reuse the program's constraint family names.
constexpr const char* kTagRouteOnActiveLink = "route_on_active_link";

struct CheckViolation {
  std::string tag;      // constraint family
  std::string element;  // offending element id(s)
  std::string detail;
};

struct CheckReport {
  std::vector<CheckViolation> violations;
  bool ok = false;
};

// Re-evaluates every constraint family directly from instance data (never
// from the generated Program): mission readiness, context, module and task
// atomicity, activity consistency, augmented budgets, capacities, input
// satisfaction, semantic budgets, bandwidth, and route path-validity.
// Routes must form simple connection paths between the assigned endpoint
// devices (empty when co-located), which supersedes checking raw flow
// equalities. Only the semantic variables of `values` are read.
// `max_violations` truncates the report early (the accept/reject outcome is
// unaffected); the enumeration oracle passes 1.
CheckReport check_solution(const ProblemInstance& inst,
                           const std::vector<CandidateConnection>& conns,
                           const std::vector<CandidateLink>& links, const VarSpace& space,
                           const std::vector<char>& values,
                           std::size_t max_violations = (std::size_t)-1);

struct OracleResult {
  bool feasible = false;
  Rat objective;                             // minimum over feasible vectors
  std::vector<std::uint32_t> optimal_masks;  // all minimizers, bit i = semantic var i
};

// Exhaustive oracle over all 0/1 semantic vectors, filtered by
// check_solution, costed by the shared cost primitives. Guarded to at most
// 24 semantic variables. Shares nothing else with the model or solver.
OracleResult brute_force(const ProblemInstance& inst,
                         const std::vector<CandidateConnection>& conns,
                         const std::vector<CandidateLink>& links, const VarSpace& space,
                         const Rat& eps_cnx = Rat(1, 1000),
                         const std::optional<Weights>& weight_override = std::nullopt);

// Semantic projection of a value vector as an oracle bitmask.
std::uint32_t semantic_mask(const VarSpace& space, const std::vector<char>& values);

struct SynthesizedSystem {
  std::vector<int> devices;      // active device indices
  std::vector<int> connections;  // active connection candidate indices
  std::vector<int> tasks;        // assigned task indices
  std::vector<int> links;        // active link candidate indices
  std::map<int, int> assignment;               // task -> device
  std::map<int, std::vector<int>> routes;      // link -> ordered connection path
  std::vector<int> selected_modules;
  std::map<int, std::vector<Rat>> device_margins;        // device -> residual per resource
  std::map<int, std::optional<Rat>> connection_margins;  // connection -> residual bandwidth
};

// Builds the human-consumable system from a checked value vector: graphs,
// assignment, ordered routes (pruning any cost-neutral cycle artifacts off
// the endpoint path) and resource margins.
SynthesizedSystem extract_system(const ProblemInstance& inst,
                                 const std::vector<CandidateConnection>& conns,
                                 const std::vector<CandidateLink>& links, const VarSpace& space,
                                 const std::vector<char>& values);

}  // namespace sysynth

#endif  // SYSYNTH_VERIFY_HPP
