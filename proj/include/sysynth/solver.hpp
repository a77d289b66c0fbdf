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

#ifndef SYSYNTH_SOLVER_HPP
#define SYSYNTH_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sysynth/model.hpp"

namespace sysynth {

enum class SolveStatus { kOptimal, kInfeasible, kTimeoutIncumbent, kTimeoutNone };

const char* to_string(SolveStatus status);

struct SolverConfig {
  double time_limit_seconds = 300.0;
  std::int64_t node_limit = INT64_C(1) << 62;
  // Deterministic mode is single threaded and returns the lexicographically
  // least optimal vector under the branching order (Dev, Assign, Cnx, Link,
  // Route, then encoding auxiliaries; index-ascending). Non-deterministic
  // mode may split the search across threads; the objective is unchanged,
  // the tie-broken vector identity is not guaranteed.
  bool deterministic = true;
};

struct SolveStats {
  std::int64_t nodes = 0;
  std::int64_t propagations = 0;
  double wall_seconds = 0.0;
};

struct Solution {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<char> values;  // aligned with program variables; empty if none found
  Rat objective;             // of `values` when present
  Rat lower_bound;           // proven global bound (equals objective when optimal)
  SolveStats stats;
};

// Exact minimization over the 0/1 vectors satisfying every program
// constraint. Status kOptimal certifies global optimality; timeouts report
// the best incumbent (if any) together with the proven lower bound.
Solution solve(const Program& program, const SolverConfig& config = {});

// Fixings implied by a partial assignment, to fixpoint, or the index of a
// constraint already violated by the fixed variables alone.
struct PropagationOutcome {
  bool conflict = false;
  int conflict_constraint = -1;
  std::vector<std::pair<int, bool>> fixings;  // derived, in derivation order
};
PropagationOutcome propagate(const Program& program,
                             const std::vector<std::pair<int, bool>>& fixed);

// Admissible completion bound for a conflict-free partial assignment:
// objective already committed by 1-fixed variables plus a cheapest-density
// cover of the still-unmet mission requirements by the remaining modules.
// Never exceeds the objective of any feasible completion; nullopt when no
// completion can meet the requirements.
std::optional<Rat> lower_bound(const Program& program,
                               const std::vector<std::pair<int, bool>>& fixed);

}  // namespace sysynth

#endif  // SYSYNTH_SOLVER_HPP
