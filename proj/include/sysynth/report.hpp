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

#ifndef SYSYNTH_REPORT_HPP
#define SYSYNTH_REPORT_HPP

#include <string>
#include <vector>

#include "sysynth/solver.hpp"
#include "sysynth/verify.hpp"

namespace sysynth {

// Solution artifact. Carries the semantic selections structurally (by
// identifier, not variable index) plus the instance digest that binds it to
// its instance. Deliberately excludes wall-clock time so repeated
// deterministic runs serialize byte-identically.
std::string solution_to_json(const ProblemInstance& inst,
                             const std::vector<CandidateConnection>& conns,
                             const std::vector<CandidateLink>& links, const Program& program,
                             const Solution& solution, const std::string& digest);

// Parsed counterpart: reconstructs a value vector over `space` (auxiliary
// encoding variables are left at zero; the checker ignores them).
struct ParsedSolution {
  std::string digest;
  std::string status;
  std::vector<char> values;
};
ParsedSolution solution_from_json(const ProblemInstance& inst,
                                  const std::vector<CandidateConnection>& conns,
                                  const std::vector<CandidateLink>& links, const VarSpace& space,
                                  const std::string& text);

std::string system_to_json(const ProblemInstance& inst,
                           const std::vector<CandidateConnection>& conns,
                           const std::vector<CandidateLink>& links, const SynthesizedSystem& sys,
                           const std::string& digest);

std::string check_report_to_json(const CheckReport& report);

// Graphviz views of a synthesized system: an undirected pseudograph for the
// hardware, a directed multigraph for the software dataflow.
std::string hardware_dot(const ProblemInstance& inst,
                         const std::vector<CandidateConnection>& conns,
                         const SynthesizedSystem& sys);
std::string software_dot(const ProblemInstance& inst, const std::vector<CandidateLink>& links,
                         const SynthesizedSystem& sys);

}  // namespace sysynth

#endif  // SYSYNTH_REPORT_HPP
