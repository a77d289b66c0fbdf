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

#include "sysynth/expansion.hpp"

#include <algorithm>

namespace sysynth {

namespace {

bool exposes_anything(const std::vector<Rat>& v) {
  return std::any_of(v.begin(), v.end(), [](const Rat& r) { return !r.is_zero(); });
}

}  // namespace

std::vector<CandidateConnection> expand_connections(const ProblemInstance& inst) {
  std::vector<CandidateConnection> out;
  const int D = (int)inst.devices.size();
  for (int x = 0; x < (int)inst.dims.transports.size(); ++x) {
    const auto& transport = inst.dims.transports[x];
    for (int u = 0; u < D; ++u) {
      if (inst.devices[u].cnx_capacity[x] <= 0) continue;
      for (int v = u + 1; v < D; ++v) {
        if (inst.devices[v].cnx_capacity[x] <= 0) continue;
        if (transport.physical && inst.mission.cnx_forbidden.count({u, v})) continue;
        CandidateConnection c;
        c.index = (int)out.size();
        c.dev_u = u;
        c.dev_v = v;
        c.transport = x;
        c.bandwidth = transport.bandwidth;
        c.overhead = transport.overhead_factor;
        if (exposes_anything(inst.devices[v].exposes[x])) c.provides_u = inst.devices[v].exposes[x];
        if (exposes_anything(inst.devices[u].exposes[x])) c.provides_v = inst.devices[u].exposes[x];
        out.push_back(std::move(c));
      }
    }
  }
  for (int d = 0; d < D; ++d) {
    CandidateConnection c;
    c.index = (int)out.size();
    c.dev_u = d;
    c.dev_v = d;
    c.transport = -1;
    c.bandwidth = std::nullopt;
    c.overhead = Rat(1);
    c.is_loop = true;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CandidateLink> expand_links(const ProblemInstance& inst) {
  std::vector<CandidateLink> out;
  const int P = (int)inst.tasks.size();
  for (int p = 0; p < P; ++p) {
    const auto& src = inst.tasks[p];
    for (int o = 0; o < (int)src.outputs.size(); ++o) {
      for (int q = 0; q < P; ++q) {
        if (q == p) continue;  // the software graph has no loops
        const auto& snk = inst.tasks[q];
        for (int i = 0; i < (int)snk.inputs.size(); ++i) {
          if (src.outputs[o].msg_type != snk.inputs[i].msg_type) continue;
          CandidateLink l;
          l.index = (int)out.size();
          l.src_task = p;
          l.src_output = o;
          l.snk_task = q;
          l.snk_input = i;
          l.msg_type = src.outputs[o].msg_type;
          l.nominal_rate = src.outputs[o].nominal_rate;
          out.push_back(std::move(l));
        }
      }
    }
  }
  return out;
}

Rat link_demand(const CandidateLink& link, const CandidateConnection& conn) {
  return link.nominal_rate * conn.overhead;
}

std::string connection_name(const ProblemInstance& inst, const CandidateConnection& c) {
  const std::string& transport =
      c.is_loop ? kLoopbackTransportId : inst.dims.transports[c.transport].id;
  if (c.is_loop) return transport + ":" + inst.devices[c.dev_u].id;
  return transport + ":" + inst.devices[c.dev_u].id + "--" + inst.devices[c.dev_v].id;
}

std::string link_name(const ProblemInstance& inst, const CandidateLink& l) {
  return inst.tasks[l.src_task].id + "." + inst.tasks[l.src_task].outputs[l.src_output].id +
         "->" + inst.tasks[l.snk_task].id + "." + inst.tasks[l.snk_task].inputs[l.snk_input].id;
}

}  // namespace sysynth
