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

#include "sysynth/verify.hpp"

#include <algorithm>
#include <stdexcept>

namespace sysynth {

namespace {

// Walks the routed edges of one link. Returns the ordered path when they
// form a simple src..snk path, nullopt otherwise; `extras` is set when
// routed edges are left off the walked path.
std::optional<std::vector<int>> walk_route(const std::vector<CandidateConnection>& conns,
                                           const std::vector<int>& routed, int src_dev,
                                           int snk_dev, bool* extras) {
  *extras = false;
  if (src_dev == snk_dev) {
    *extras = !routed.empty();
    return std::vector<int>{};
  }
  // Degrees over the routed multiset.
  std::map<int, int> degree;
  for (int k : routed) {
    degree[conns[k].dev_u]++;
    degree[conns[k].dev_v]++;
  }
  std::vector<int> path;
  std::vector<char> used(routed.size(), 0);
  int at = src_dev;
  while (at != snk_dev) {
    int chosen = -1;
    for (std::size_t i = 0; i < routed.size(); ++i) {
      if (used[i]) continue;
      if (conns[routed[i]].incident(at)) {
        if (chosen >= 0) return std::nullopt;  // branching: not a simple path
        chosen = (int)i;
      }
    }
    if (chosen < 0) return std::nullopt;  // dead end before the sink
    used[chosen] = 1;
    path.push_back(routed[chosen]);
    at = conns[routed[chosen]].other(at);
    if ((int)path.size() > (int)routed.size()) return std::nullopt;
  }
  for (char u : used)
    if (!u) *extras = true;
  return path;
}

}  // namespace

std::uint32_t semantic_mask(const VarSpace& space, const std::vector<char>& values) {
  if (space.semantic_count > 32)
    throw std::invalid_argument("semantic_mask: space too large for a 32-bit mask");
  std::uint32_t mask = 0;
  for (int i = 0; i < space.semantic_count; ++i)
    if (values[i]) mask |= (std::uint32_t)1 << i;
  return mask;
}

CheckReport check_solution(const ProblemInstance& inst,
                           const std::vector<CandidateConnection>& conns,
                           const std::vector<CandidateLink>& links, const VarSpace& space,
                           const std::vector<char>& values, std::size_t max_violations) {
  CheckReport report;
  auto violate = [&](const char* tag, std::string element, std::string detail) {
    report.violations.push_back({tag, std::move(element), std::move(detail)});
  };
  auto full = [&] { return report.violations.size() >= max_violations; };
  const int D = space.n_devices;
  const int P = space.n_tasks;
  const int J = inst.dims.j();
  const int Q = inst.dims.q();
  const int W = inst.dims.w();
  const int X = inst.dims.x();

  auto dev_on = [&](int d) { return values[space.dev(d)] != 0; };
  auto cnx_on = [&](int k) { return values[space.cnx(k)] != 0; };
  auto link_on = [&](int l) { return values[space.link(l)] != 0; };
  auto asg_on = [&](int d, int p) {
    int v = space.assign(d, p);
    return v >= 0 && values[v] != 0;
  };
  auto assigned_count = [&](int p) {
    int n = 0;
    for (const auto& [d, av] : space.assigns_of(p))
      if (values[av]) ++n;
    return n;
  };
  auto assigned_device = [&](int p) {
    for (const auto& [d, av] : space.assigns_of(p))
      if (values[av]) return d;
    return -1;
  };

  // Mission readiness with module activity as the member-average.
  for (int q = 0; q < Q; ++q) {
    if (inst.mission.requirements[q].is_zero()) continue;
    Rat total;
    for (const auto& mod : inst.modules) {
      int members = mod.member_count();
      if (members == 0 || mod.capability[q].is_zero()) continue;
      int units = 0;
      for (int d : mod.devices) units += dev_on(d);
      for (int p : mod.tasks) units += assigned_count(p);
      total += mod.capability[q] * Rat(units) / Rat(members);
    }
    if (total < inst.mission.requirements[q])
      violate(kTagMission, inst.dims.function_dims[q],
              "selected modules provide " + total.to_string() + " of required " +
                  inst.mission.requirements[q].to_string());
  }

  if (full()) {
    report.ok = false;
    return report;
  }
  // Context bounding box.
  for (int p = 0; p < P; ++p)
    for (int j = 0; j < J; ++j) {
      const Rat& y = inst.tasks[p].context_req[j];
      if (y.is_zero()) continue;
      Rat used = y * Rat(assigned_count(p));
      if (used > inst.mission.context[j])
        violate(kTagContext, inst.tasks[p].id,
                "context '" + inst.dims.context_dims[j] + "' requires " + used.to_string() +
                    " but mission provides " + inst.mission.context[j].to_string());
    }

  if (full()) {
    report.ok = false;
    return report;
  }
  // Module atomicity.
  for (const auto& mod : inst.modules) {
    int members = mod.member_count();
    if (members < 2) continue;
    int units = 0;
    for (int d : mod.devices) units += dev_on(d);
    for (int p : mod.tasks) units += assigned_count(p);
    for (int p : mod.tasks)
      if (members * assigned_count(p) != units)
        violate(kTagModuleTaskAtomicity, inst.tasks[p].id,
                "task activation disagrees with module '" + mod.id + "'");
    for (int d : mod.devices)
      if (members * (dev_on(d) ? 1 : 0) != units)
        violate(kTagModuleDeviceAtomicity, inst.devices[d].id,
                "device activation disagrees with module '" + mod.id + "'");
  }

  if (full()) {
    report.ok = false;
    return report;
  }
  // A task runs on at most one device.
  for (int p = 0; p < P; ++p)
    if (assigned_count(p) > 1)
      violate(kTagTaskSelection, inst.tasks[p].id, "task assigned to multiple devices");

  if (full()) {
    report.ok = false;
    return report;
  }
  // Execution only on active devices.
  for (int p = 0; p < P; ++p)
    for (const auto& [d, av] : space.assigns_of(p))
      if (values[av] && !dev_on(d))
        violate(kTagExecOnActive, inst.tasks[p].id,
                "assigned to inactive device '" + inst.devices[d].id + "'");

  if (full()) {
    report.ok = false;
    return report;
  }
  // Augmented resource budgets.
  for (int d = 0; d < D; ++d)
    for (int w = 0; w < W; ++w) {
      Rat used;
      bool any = false;
      for (int p = 0; p < P; ++p)
        if (asg_on(d, p)) {
          const Rat& c = inst.tasks[p].consumption.at(d)[w];
          if (!c.is_zero()) {
            used += c;
            any = true;
          }
        }
      if (!any) continue;
      Rat budget = inst.devices[d].resources[w];
      for (int k = 0; k < space.n_nonloop; ++k) {
        if (!cnx_on(k) || !conns[k].incident(d)) continue;
        const auto& prov = d == conns[k].dev_u ? conns[k].provides_u : conns[k].provides_v;
        if ((int)prov.size() > w) budget += prov[w];
      }
      if (used > budget)
        violate(kTagResourceBudget, inst.devices[d].id,
                "resource '" + inst.dims.resources[w].id + "' over-allocated: " + used.to_string() +
                    " > " + budget.to_string());
    }

  if (full()) {
    report.ok = false;
    return report;
  }
  // Connections only between active devices.
  for (int k = 0; k < space.n_conns; ++k)
    if (cnx_on(k) && (!dev_on(conns[k].dev_u) || !dev_on(conns[k].dev_v)))
      violate(kTagCnxOnActiveDevice, connection_name(inst, conns[k]),
              "connection touches an inactive device");

  if (full()) {
    report.ok = false;
    return report;
  }
  // Per-transport capacities (loopbacks exempt).
  for (int d = 0; d < D; ++d)
    for (int x = 0; x < X; ++x) {
      std::int64_t used = 0;
      for (int k = 0; k < space.n_nonloop; ++k)
        if (cnx_on(k) && conns[k].transport == x && conns[k].incident(d)) ++used;
      if (used > inst.devices[d].cnx_capacity[x])
        violate(kTagCnxCapacity, inst.devices[d].id,
                "transport '" + inst.dims.transports[x].id + "' capacity exceeded");
    }

  if (full()) {
    report.ok = false;
    return report;
  }
  // Input satisfaction and semantic budgets.
  for (int p = 0; p < P; ++p) {
    int active = assigned_count(p);
    for (std::size_t i = 0; i < inst.tasks[p].inputs.size(); ++i) {
      const auto& port = inst.tasks[p].inputs[i];
      int fed = 0;
      std::map<std::string, Rat> provided;
      for (int l = 0; l < space.n_links; ++l) {
        if (links[l].snk_task != p || links[l].snk_input != (int)i || !link_on(l)) continue;
        ++fed;
        for (const auto& [key, val] :
             inst.tasks[links[l].src_task].outputs[links[l].src_output].provides)
          provided[key] += val;
      }
      if (active > fed)
        violate(kTagInputSatisfaction, inst.tasks[p].id + "." + port.id,
                "active task input has no feeding link");
      for (const auto& [key, need] : port.requires_sem) {
        if (need.is_zero()) continue;
        Rat have;
        auto it = provided.find(key);
        if (it != provided.end()) have = it->second;
        if (have < need * Rat(active))
          violate(kTagLinkSemantics, inst.tasks[p].id + "." + port.id,
                  "semantic '" + key + "' under-provided: " + have.to_string() + " < " +
                      (need * Rat(active)).to_string());
      }
    }
  }

  if (full()) {
    report.ok = false;
    return report;
  }
  // Routing consistency and path-validity.
  for (int l = 0; l < space.n_links; ++l) {
    std::vector<int> routed;
    for (int k = 0; k < space.n_nonloop; ++k)
      if (values[space.route(k, l)]) routed.push_back(k);
    for (int k : routed)
      if (!cnx_on(k))
        violate(kTagRouteOnActiveCnx, link_name(inst, links[l]),
                "routed over inactive connection " + connection_name(inst, conns[k]));
    if (!link_on(l)) {
      if (!routed.empty())
        violate(kTagRouteOnActiveLink, link_name(inst, links[l]),
                "inactive link has routed connections");
      continue;
    }
    int src_dev = assigned_device(links[l].src_task);
    int snk_dev = assigned_device(links[l].snk_task);
    if ((src_dev < 0) != (snk_dev < 0)) {
      violate(kTagFlowConservation, link_name(inst, links[l]),
              "active link with exactly one endpoint task assigned");
      continue;
    }
    if (src_dev < 0) {
      if (!routed.empty())
        violate(kTagFlowConservation, link_name(inst, links[l]),
                "routed link between unassigned tasks");
      continue;
    }
    bool extras = false;
    auto path = walk_route(conns, routed, src_dev, snk_dev, &extras);
    if (!path || extras)
      violate(kTagFlowConservation, link_name(inst, links[l]),
              "routed connections do not form a simple path between '" +
                  inst.devices[src_dev].id + "' and '" + inst.devices[snk_dev].id + "'");
  }

  if (full()) {
    report.ok = false;
    return report;
  }
  // Bandwidth on bounded connections.
  for (int k = 0; k < space.n_nonloop; ++k) {
    if (!conns[k].bandwidth) continue;
    Rat used;
    for (int l = 0; l < space.n_links; ++l)
      if (values[space.route(k, l)]) used += link_demand(links[l], conns[k]);
    if (used > *conns[k].bandwidth)
      violate(kTagBandwidth, connection_name(inst, conns[k]),
              "bandwidth over-subscribed: " + used.to_string() + " > " +
                  conns[k].bandwidth->to_string());
  }

  report.ok = report.violations.empty();
  return report;
}

OracleResult brute_force(const ProblemInstance& inst,
                         const std::vector<CandidateConnection>& conns,
                         const std::vector<CandidateLink>& links, const VarSpace& space,
                         const Rat& eps_cnx, const std::optional<Weights>& weight_override) {
  const int n = space.semantic_count;
  if (n > 24) throw std::invalid_argument("brute_force: more than 24 semantic variables");

  // Per-variable cost from the shared primitives only.
  const Weights weights = weight_override.value_or(inst.weights);
  std::vector<Rat> cost((std::size_t)n, Rat(0));
  for (const auto& mod : inst.modules) {
    int members = mod.member_count();
    if (members == 0) continue;
    Rat share = weights.module_cost * module_cost(inst, mod) / Rat(members);
    if (share.is_zero()) continue;
    for (int d : mod.devices) cost[space.dev(d)] += share;
    for (int p : mod.tasks)
      for (const auto& [d, av] : space.assigns_of(p)) {
        (void)d;
        cost[av] += share;
      }
  }
  for (int p = 0; p < space.n_tasks; ++p)
    for (const auto& [d, av] : space.assigns_of(p))
      cost[av] += weights.exec * exec_cost(inst, d, p);
  for (int k = 0; k < space.n_conns; ++k)
    if (!conns[k].is_loop) cost[space.cnx(k)] += weights.routing * eps_cnx;
  for (int k = 0; k < space.n_nonloop; ++k)
    for (int l = 0; l < space.n_links; ++l)
      cost[space.route(k, l)] += weights.routing * route_cost(links[l], conns[k]);

  OracleResult result;
  std::vector<char> values(space.vars.size(), 0);
  const std::uint32_t end = n >= 32 ? 0 : (std::uint32_t)1 << n;
  for (std::uint32_t mask = 0;; ++mask) {
    if (n < 32 && mask == end) break;
    for (int i = 0; i < n; ++i) values[i] = (mask >> i) & 1;
    if (check_solution(inst, conns, links, space, values, 1).ok) {
      Rat obj;
      for (int i = 0; i < n; ++i)
        if (values[i]) obj += cost[i];
      if (!result.feasible || obj < result.objective) {
        result.feasible = true;
        result.objective = obj;
        result.optimal_masks.clear();
        result.optimal_masks.push_back(mask);
      } else if (obj == result.objective) {
        result.optimal_masks.push_back(mask);
      }
    }
    if (mask == end - 1) break;
  }
  return result;
}

SynthesizedSystem extract_system(const ProblemInstance& inst,
                                 const std::vector<CandidateConnection>& conns,
                                 const std::vector<CandidateLink>& links, const VarSpace& space,
                                 const std::vector<char>& values) {
  SynthesizedSystem sys;
  for (int d = 0; d < space.n_devices; ++d)
    if (values[space.dev(d)]) sys.devices.push_back(d);
  for (int k = 0; k < space.n_conns; ++k)
    if (values[space.cnx(k)]) sys.connections.push_back(k);
  for (int p = 0; p < space.n_tasks; ++p)
    for (const auto& [d, av] : space.assigns_of(p))
      if (values[av]) {
        sys.tasks.push_back(p);
        sys.assignment[p] = d;
        break;
      }
  for (int l = 0; l < space.n_links; ++l)
    if (values[space.link(l)]) sys.links.push_back(l);

  for (int l : sys.links) {
    std::vector<int> routed;
    for (int k = 0; k < space.n_nonloop; ++k)
      if (values[space.route(k, l)]) routed.push_back(k);
    auto src = sys.assignment.find(links[l].src_task);
    auto snk = sys.assignment.find(links[l].snk_task);
    std::vector<int> path;
    if (src != sys.assignment.end() && snk != sys.assignment.end() && src->second != snk->second) {
      bool extras = false;
      auto walked = walk_route(conns, routed, src->second, snk->second, &extras);
      if (walked) path = *walked;
    }
    sys.routes[l] = std::move(path);
  }

  for (std::size_t m = 0; m < inst.modules.size(); ++m) {
    const auto& mod = inst.modules[m];
    int members = mod.member_count();
    if (members == 0) continue;
    int units = 0;
    for (int d : mod.devices) units += values[space.dev(d)] ? 1 : 0;
    for (int p : mod.tasks) units += sys.assignment.count(p) ? 1 : 0;
    if (units == members) sys.selected_modules.push_back((int)m);
  }

  // Residual resources per selected device, counting exposures from active
  // incident connections.
  for (int d : sys.devices) {
    std::vector<Rat> margin = inst.devices[d].resources;
    for (int k : sys.connections) {
      if (k >= space.n_nonloop || !conns[k].incident(d)) continue;
      const auto& prov = d == conns[k].dev_u ? conns[k].provides_u : conns[k].provides_v;
      for (std::size_t w = 0; w < prov.size(); ++w) margin[w] += prov[w];
    }
    for (const auto& [p, dev] : sys.assignment) {
      if (dev != d) continue;
      const auto& c = inst.tasks[p].consumption.at(d);
      for (std::size_t w = 0; w < c.size(); ++w) margin[w] -= c[w];
    }
    sys.device_margins[d] = std::move(margin);
  }

  // Residual bandwidth per selected connection.
  for (int k : sys.connections) {
    if (k >= space.n_nonloop || !conns[k].bandwidth) {
      sys.connection_margins[k] = std::nullopt;
      continue;
    }
    Rat left = *conns[k].bandwidth;
    for (const auto& [l, path] : sys.routes)
      if (std::find(path.begin(), path.end(), k) != path.end())
        left -= link_demand(links[l], conns[k]);
    sys.connection_margins[k] = left;
  }
  return sys;
}

}  // namespace sysynth
