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

#ifndef SYSYNTH_EXPANSION_HPP
#define SYSYNTH_EXPANSION_HPP

#include <optional>
#include <string>
#include <vector>

#include "sysynth/catalog.hpp"

namespace sysynth {

// One candidate hardware edge. Real transports produce one candidate per
// unordered device pair with positive capacity on both ends; in addition
// every device gets one loopback candidate on the reserved `loopback`
// transport (unbounded bandwidth, overhead 1, zero cost, exempt from
// capacity accounting and carrying no exposed resources).
struct CandidateConnection {
  int index = -1;
  int dev_u = -1;          // dev_u <= dev_v; equal only for loopbacks
  int dev_v = -1;
  int transport = -1;      // index into dims.transports; -1 for loopback
  std::optional<Rat> bandwidth;
  Rat overhead{1};
  bool is_loop = false;
  // Resources the connection grants each endpoint, i.e. what the opposite
  // endpoint exposes over this transport. Zero-length when nothing is
  // exposed.
  std::vector<Rat> provides_u;  // granted to dev_u (exposed by dev_v)
  std::vector<Rat> provides_v;  // granted to dev_v (exposed by dev_u)

  bool incident(int dev) const { return dev == dev_u || dev == dev_v; }
  int other(int dev) const { return dev == dev_u ? dev_v : dev_u; }
};

// One candidate software edge: an output port feeding a type-compatible
// input port of a different task. Mismatched message types never produce a
// candidate, so the type-agreement rule holds by construction.
struct CandidateLink {
  int index = -1;
  int src_task = -1;
  int src_output = -1;  // index into tasks[src_task].outputs
  int snk_task = -1;
  int snk_input = -1;   // index into tasks[snk_task].inputs
  int msg_type = -1;
  Rat nominal_rate;
};

// Candidates are indexed transport-major (dims order), pairs in (u, v)
// index order, with the loopback block last. Deterministic.
std::vector<CandidateConnection> expand_connections(const ProblemInstance& inst);

// Candidates ordered by (source task, output, sink task, input).
// Deterministic.
std::vector<CandidateLink> expand_links(const ProblemInstance& inst);

// Bandwidth demand of routing `link` over `conn`: nominal rate scaled by
// the transport overhead factor.
Rat link_demand(const CandidateLink& link, const CandidateConnection& conn);

// Display names used in reports and artifact files.
std::string connection_name(const ProblemInstance& inst, const CandidateConnection& c);
std::string link_name(const ProblemInstance& inst, const CandidateLink& l);

}  // namespace sysynth

#endif  // SYSYNTH_EXPANSION_HPP
