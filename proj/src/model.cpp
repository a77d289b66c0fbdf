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

#include "sysynth/model.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace sysynth {

namespace {

// Accumulates coefficients per variable; emits terms index-ascending with
// zero coefficients dropped.
class RowBuilder {
 public:
  void add(int var, const Rat& coef) {
    if (var < 0) return;
    auto [it, inserted] = coef_.try_emplace(var, coef);
    if (!inserted) it->second += coef;
  }
  Constraint done(Rel rel, Rat rhs, const char* tag) {
    Constraint c;
    for (const auto& [v, r] : coef_)
      if (!r.is_zero()) c.terms.emplace_back(v, r);
    c.rel = rel;
    c.rhs = std::move(rhs);
    c.tag = tag;
    coef_.clear();
    return c;
  }
  bool has_terms() const {
    for (const auto& [v, c] : coef_)
      if (!c.is_zero()) return true;
    return false;
  }

 private:
  std::map<int, Rat> coef_;
};

std::string double_str(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

ExposureMatrix exposure_matrix(const ProblemInstance& inst,
                               const std::vector<CandidateConnection>& conns) {
  ExposureMatrix m(inst.devices.size(), std::vector<char>(inst.dims.resources.size(), 0));
  for (const auto& c : conns) {
    if (c.is_loop) continue;
    for (std::size_t w = 0; w < c.provides_u.size(); ++w)
      if (!c.provides_u[w].is_zero()) m[c.dev_u][w] = 1;
    for (std::size_t w = 0; w < c.provides_v.size(); ++w)
      if (!c.provides_v[w].is_zero()) m[c.dev_v][w] = 1;
  }
  return m;
}

bool device_task_compatible(const ProblemInstance& inst, const ExposureMatrix& exposable, int d,
                            int p) {
  const auto& task = inst.tasks[p];
  auto it = task.consumption.find(d);
  if (it == task.consumption.end()) return false;
  const auto& c = it->second;
  const auto& r = inst.devices[d].resources;
  for (std::size_t w = 0; w < c.size() && w < r.size(); ++w)
    if (!c[w].is_zero() && r[w].is_zero() && !exposable[d][w]) return false;
  return true;
}

std::vector<std::string> required_constraint_tags(FlowMode mode) {
  std::vector<std::string> tags = {
      kTagMission,          kTagContext,        kTagModuleTaskAtomicity,
      kTagModuleDeviceAtomicity, kTagTaskSelection, kTagExecOnActive,
      kTagResourceBudget,   kTagCnxOnActiveDevice, kTagCnxCapacity,
      kTagInputSatisfaction, kTagLinkSemantics, kTagRouteOnActiveCnx,
      kTagBandwidth};
  tags.push_back(mode == FlowMode::kDirected ? kTagFlowConservation : kTagFlowBalance);
  return tags;
}

VarSpace make_var_space(const ProblemInstance& inst,
                        const std::vector<CandidateConnection>& conns,
                        const std::vector<CandidateLink>& links, FlowMode mode) {
  VarSpace s;
  s.flow_mode = mode;
  s.n_devices = (int)inst.devices.size();
  s.n_tasks = (int)inst.tasks.size();
  s.n_conns = (int)conns.size();
  s.n_links = (int)links.size();
  s.n_nonloop = 0;
  while (s.n_nonloop < s.n_conns && !conns[s.n_nonloop].is_loop) ++s.n_nonloop;
  for (const auto& c : conns) {
    s.conn_u.push_back(c.dev_u);
    s.conn_v.push_back(c.dev_v);
  }
  for (const auto& l : links) {
    s.link_src.push_back(l.src_task);
    s.link_snk.push_back(l.snk_task);
  }

  for (int d = 0; d < s.n_devices; ++d) s.vars.push_back({VarKind::Dev, d, -1, -1});

  const ExposureMatrix exposable = exposure_matrix(inst, conns);
  s.assigns_by_task_.resize(s.n_tasks);
  for (int d = 0; d < s.n_devices; ++d)
    for (int p = 0; p < s.n_tasks; ++p)
      if (device_task_compatible(inst, exposable, d, p)) {
        int v = (int)s.vars.size();
        s.vars.push_back({VarKind::Assign, d, p, -1});
        s.assign_ix_[{d, p}] = v;
      }
  for (int p = 0; p < s.n_tasks; ++p)
    for (int d = 0; d < s.n_devices; ++d) {
      int v = s.assign(d, p);
      if (v >= 0) s.assigns_by_task_[p].emplace_back(d, v);
    }

  s.cnx_base_ = (int)s.vars.size();
  for (int k = 0; k < s.n_conns; ++k) s.vars.push_back({VarKind::Cnx, k, -1, -1});

  s.link_base_ = (int)s.vars.size();
  for (int l = 0; l < s.n_links; ++l) s.vars.push_back({VarKind::Link, l, -1, -1});

  s.route_base_ = (int)s.vars.size();
  for (int l = 0; l < s.n_links; ++l)
    for (int k = 0; k < s.n_nonloop; ++k) s.vars.push_back({VarKind::Route, k, l, -1});

  s.semantic_count = (int)s.vars.size();

  if (mode == FlowMode::kDirected) {
    s.arc_base_ = (int)s.vars.size();
    for (int l = 0; l < s.n_links; ++l)
      for (int k = 0; k < s.n_nonloop; ++k)
        for (int dir = 0; dir < 2; ++dir) s.vars.push_back({VarKind::Arc, k, l, dir});
  }

  for (int l = 0; l < s.n_links; ++l)
    for (int endpoint = 0; endpoint < 2; ++endpoint) {
      int task = endpoint == 0 ? links[l].src_task : links[l].snk_task;
      for (const auto& [d, av] : s.assigns_by_task_[task]) {
        (void)av;
        int v = (int)s.vars.size();
        s.vars.push_back({VarKind::Gate, d, l, endpoint});
        s.gate_ix_[{l, endpoint, d}] = v;
      }
    }

  if (mode == FlowMode::kDummy) {
    std::vector<char> has_nonloop(s.n_devices, 0);
    for (int k = 0; k < s.n_nonloop; ++k) {
      has_nonloop[conns[k].dev_u] = 1;
      has_nonloop[conns[k].dev_v] = 1;
    }
    for (int l = 0; l < s.n_links; ++l)
      for (int d = 0; d < s.n_devices; ++d) {
        if (has_nonloop[d]) {
          int v = (int)s.vars.size();
          s.vars.push_back({VarKind::Dummy, d, l, 0});
          s.dummy_ix_[{l, d, 0}] = v;
        }
        if (s.gate(d, l, 0) >= 0 && s.gate(d, l, 1) >= 0) {
          int v = (int)s.vars.size();
          s.vars.push_back({VarKind::Dummy, d, l, 1});
          s.dummy_ix_[{l, d, 1}] = v;
        }
      }
  }
  return s;
}

Rat exec_cost(const ProblemInstance& inst, int d, int p) {
  const auto& c = inst.tasks[p].consumption.at(d);
  const auto& r = inst.devices[d].resources;
  Rat total;
  for (std::size_t w = 0; w < c.size(); ++w) {
    // Connection-granted resources (r = 0 on a compatible pair) have no
    // meaningful utilization fraction and carry no execution cost.
    if (c[w].is_zero() || r[w].is_zero()) continue;
    total += c[w] / r[w];
  }
  return total;
}

Rat route_cost(const CandidateLink& link, const CandidateConnection& conn) {
  if (conn.is_loop) return Rat(0);
  if (!conn.bandwidth || conn.bandwidth->is_zero()) return Rat(0);
  return link_demand(link, conn) / *conn.bandwidth;
}

Rat module_cost(const ProblemInstance& inst, const Module& mod) {
  Rat total = mod.overhead_cost;
  for (int d : mod.devices) total += inst.devices[d].cost;
  return total;
}

Program build_program(const ProblemInstance& inst,
                      const std::vector<CandidateConnection>& conns,
                      const std::vector<CandidateLink>& links,
                      const BuildOptions& options) {
  Program prog;
  prog.space = make_var_space(inst, conns, links, options.flow_mode);
  const VarSpace& s = prog.space;
  const Weights weights = options.weight_override.value_or(inst.weights);
  const int W = inst.dims.w();
  const int X = inst.dims.x();
  const int J = inst.dims.j();
  const int Q = inst.dims.q();

  // Names. Identifier-built names are unique in practice; an index suffix
  // resolves pathological collisions deterministically.
  {
    std::set<std::string> taken;
    prog.var_names.reserve(s.vars.size());
    for (std::size_t i = 0; i < s.vars.size(); ++i) {
      const VarId& v = s.vars[i];
      std::string name;
      switch (v.kind) {
        case VarKind::Dev: name = "dev_" + inst.devices[v.a].id; break;
        case VarKind::Assign:
          name = "asg_" + inst.devices[v.a].id + "_" + inst.tasks[v.b].id;
          break;
        case VarKind::Cnx: {
          const auto& c = conns[v.a];
          const std::string& x = c.is_loop ? kLoopbackTransportId : inst.dims.transports[c.transport].id;
          name = "cnx_" + x + "_" + std::to_string(v.a);
          break;
        }
        case VarKind::Link: name = "lnk_" + std::to_string(v.a); break;
        case VarKind::Route: name = "rte_" + std::to_string(v.a) + "_" + std::to_string(v.b); break;
        case VarKind::Arc:
          name = "arc_" + std::to_string(v.a) + "_" + std::to_string(v.b) +
                 (v.c == 0 ? "_fwd" : "_bwd");
          break;
        case VarKind::Gate:
          name = "gat_" + inst.devices[v.a].id + "_" + std::to_string(v.b) + (v.c == 0 ? "_s" : "_t");
          break;
        case VarKind::Dummy:
          name = "dum_" + inst.devices[v.a].id + "_" + std::to_string(v.b) + (v.c == 0 ? "_t" : "_p");
          break;
      }
      if (!taken.insert(name).second) {
        name += "__" + std::to_string(i);
        taken.insert(name);
      }
      prog.var_names.push_back(std::move(name));
    }
  }

  // Objective. Module cost is spread over member activations so that a
  // fully selected module contributes exactly w1 * (overhead + devices).
  prog.objective.assign(s.vars.size(), Rat(0));
  prog.requirements = inst.mission.requirements;
  for (const auto& mod : inst.modules) {
    ModuleBound mb;
    mb.member_count = mod.member_count();
    mb.capability = mod.capability;
    if (mb.member_count == 0) {
      mb.cost_per_unit = Rat(0);
      prog.module_bounds.push_back(std::move(mb));
      continue;
    }
    mb.cost_per_unit = weights.module_cost * module_cost(inst, mod) / Rat(mb.member_count);
    for (int d : mod.devices) {
      mb.device_vars.push_back(s.dev(d));
      prog.objective[s.dev(d)] += mb.cost_per_unit;
    }
    for (int p : mod.tasks) {
      std::vector<int> avars;
      for (const auto& [d, av] : s.assigns_of(p)) {
        (void)d;
        avars.push_back(av);
        prog.objective[av] += mb.cost_per_unit;
      }
      mb.task_assign_vars.push_back(std::move(avars));
    }
    prog.module_bounds.push_back(std::move(mb));
  }
  for (int p = 0; p < s.n_tasks; ++p)
    for (const auto& [d, av] : s.assigns_of(p))
      prog.objective[av] += weights.exec * exec_cost(inst, d, p);
  for (int k = 0; k < s.n_conns; ++k)
    if (!conns[k].is_loop) prog.objective[s.cnx(k)] += weights.routing * options.eps_cnx;
  for (int k = 0; k < s.n_nonloop; ++k)
    for (int l = 0; l < s.n_links; ++l) {
      Rat rc = route_cost(links[l], conns[k]);
      if (!rc.is_zero()) prog.objective[s.route(k, l)] += weights.routing * rc;
    }

  RowBuilder row;
  auto emit = [&](Rel rel, Rat rhs, const char* tag) {
    prog.constraints.push_back(row.done(rel, std::move(rhs), tag));
  };

  // (a) mission readiness, with module activity expanded over members.
  for (int q = 0; q < Q; ++q) {
    if (inst.mission.requirements[q].is_zero()) continue;
    for (std::size_t m = 0; m < inst.modules.size(); ++m) {
      const auto& mod = inst.modules[m];
      if (mod.member_count() == 0 || mod.capability[q].is_zero()) continue;
      Rat share = mod.capability[q] / Rat(mod.member_count());
      for (int d : mod.devices) row.add(s.dev(d), share);
      for (int p : mod.tasks)
        for (const auto& [d, av] : s.assigns_of(p)) {
          (void)d;
          row.add(av, share);
        }
    }
    emit(Rel::Ge, inst.mission.requirements[q], kTagMission);
  }

  // (b) context bounding box per task and dimension.
  for (int p = 0; p < s.n_tasks; ++p) {
    if (s.assigns_of(p).empty()) continue;
    for (int j = 0; j < J; ++j) {
      const Rat& y = inst.tasks[p].context_req[j];
      if (y.is_zero()) continue;
      for (const auto& [d, av] : s.assigns_of(p)) {
        (void)d;
        row.add(av, y);
      }
      emit(Rel::Le, inst.mission.context[j], kTagContext);
    }
  }

  // (c) module atomicity: every member activation equals the module's
  // activation. Trivial for single-member modules.
  for (const auto& mod : inst.modules) {
    int members = mod.member_count();
    if (members < 2) continue;
    auto add_member_sum = [&](const Rat& coef) {
      for (int d : mod.devices) row.add(s.dev(d), coef);
      for (int p : mod.tasks)
        for (const auto& [d, av] : s.assigns_of(p)) {
          (void)d;
          row.add(av, coef);
        }
    };
    for (int p : mod.tasks) {
      for (const auto& [d, av] : s.assigns_of(p)) {
        (void)d;
        row.add(av, Rat(members));
      }
      add_member_sum(Rat(-1));
      emit(Rel::Eq, Rat(0), kTagModuleTaskAtomicity);
    }
    for (int d : mod.devices) {
      row.add(s.dev(d), Rat(members));
      add_member_sum(Rat(-1));
      emit(Rel::Eq, Rat(0), kTagModuleDeviceAtomicity);
    }
  }

  // (d) a task runs on at most one device.
  for (int p = 0; p < s.n_tasks; ++p) {
    if (s.assigns_of(p).empty()) continue;
    for (const auto& [d, av] : s.assigns_of(p)) {
      (void)d;
      row.add(av, Rat(1));
    }
    emit(Rel::Le, Rat(1), kTagTaskSelection);
  }

  // (e) execution only on active devices.
  for (int p = 0; p < s.n_tasks; ++p)
    for (const auto& [d, av] : s.assigns_of(p)) {
      row.add(av, Rat(1));
      row.add(s.dev(d), Rat(-1));
      emit(Rel::Le, Rat(0), kTagExecOnActive);
    }

  // (f) resource budgets augmented by what incident active connections
  // expose to this device.
  for (int d = 0; d < s.n_devices; ++d) {
    for (int w = 0; w < W; ++w) {
      bool any = false;
      for (int p = 0; p < s.n_tasks; ++p) {
        int av = s.assign(d, p);
        if (av < 0) continue;
        const Rat& c = inst.tasks[p].consumption.at(d)[w];
        if (c.is_zero()) continue;
        row.add(av, c);
        any = true;
      }
      if (!any) continue;
      for (int k = 0; k < s.n_nonloop; ++k) {
        const auto& conn = conns[k];
        if (!conn.incident(d)) continue;
        const auto& prov = d == conn.dev_u ? conn.provides_u : conn.provides_v;
        if ((int)prov.size() > w && !prov[w].is_zero()) row.add(s.cnx(k), -prov[w]);
      }
      emit(Rel::Le, inst.devices[d].resources[w], kTagResourceBudget);
    }
  }

  // (g) connections only between active devices.
  for (int k = 0; k < s.n_conns; ++k) {
    const auto& conn = conns[k];
    row.add(s.cnx(k), Rat(1));
    row.add(s.dev(conn.dev_u), Rat(-1));
    emit(Rel::Le, Rat(0), kTagCnxOnActiveDevice);
    if (!conn.is_loop) {
      row.add(s.cnx(k), Rat(1));
      row.add(s.dev(conn.dev_v), Rat(-1));
      emit(Rel::Le, Rat(0), kTagCnxOnActiveDevice);
    }
  }

  // (h) per-transport connection capacity (loopbacks exempt).
  for (int d = 0; d < s.n_devices; ++d)
    for (int x = 0; x < X; ++x) {
      bool any = false;
      for (int k = 0; k < s.n_nonloop; ++k)
        if (conns[k].transport == x && conns[k].incident(d)) {
          row.add(s.cnx(k), Rat(1));
          any = true;
        }
      if (any) emit(Rel::Le, Rat(inst.devices[d].cnx_capacity[x]), kTagCnxCapacity);
    }

  // Incoming candidate links per (task, input port).
  std::vector<std::vector<std::vector<int>>> links_into(s.n_tasks);
  for (int p = 0; p < s.n_tasks; ++p) links_into[p].resize(inst.tasks[p].inputs.size());
  for (int l = 0; l < s.n_links; ++l) links_into[links[l].snk_task][links[l].snk_input].push_back(l);

  // (i) every input of an active task is fed by at least one link.
  for (int p = 0; p < s.n_tasks; ++p) {
    if (s.assigns_of(p).empty()) continue;
    for (std::size_t i = 0; i < inst.tasks[p].inputs.size(); ++i) {
      for (const auto& [d, av] : s.assigns_of(p)) {
        (void)d;
        row.add(av, Rat(1));
      }
      for (int l : links_into[p][i]) row.add(s.link(l), Rat(-1));
      emit(Rel::Le, Rat(0), kTagInputSatisfaction);
    }
  }

  // (j) linked outputs cover the input's semantic requirements whenever the
  // task is active.
  for (int p = 0; p < s.n_tasks; ++p) {
    if (s.assigns_of(p).empty()) continue;
    for (std::size_t i = 0; i < inst.tasks[p].inputs.size(); ++i) {
      const auto& port = inst.tasks[p].inputs[i];
      for (const auto& [key, need] : port.requires_sem) {
        if (need.is_zero()) continue;
        for (int l : links_into[p][i]) {
          const auto& prov = inst.tasks[links[l].src_task].outputs[links[l].src_output].provides;
          auto it = prov.find(key);
          if (it != prov.end() && !it->second.is_zero()) row.add(s.link(l), it->second);
        }
        for (const auto& [d, av] : s.assigns_of(p)) {
          (void)d;
          row.add(av, -need);
        }
        emit(Rel::Ge, Rat(0), kTagLinkSemantics);
      }
    }
  }

  // (k) routing only over active connections and for active links.
  for (int k = 0; k < s.n_nonloop; ++k)
    for (int l = 0; l < s.n_links; ++l) {
      row.add(s.route(k, l), Rat(1));
      row.add(s.cnx(k), Rat(-1));
      emit(Rel::Le, Rat(0), kTagRouteOnActiveCnx);
      row.add(s.route(k, l), Rat(1));
      row.add(s.link(l), Rat(-1));
      emit(Rel::Le, Rat(0), kTagPlumbing);
    }

  // Gate products: gate(d,l,e) = link(l) AND assign(d, endpoint task).
  for (int l = 0; l < s.n_links; ++l)
    for (int endpoint = 0; endpoint < 2; ++endpoint) {
      int task = endpoint == 0 ? links[l].src_task : links[l].snk_task;
      for (const auto& [d, av] : s.assigns_of(task)) {
        int g = s.gate(d, l, endpoint);
        row.add(g, Rat(1));
        row.add(s.link(l), Rat(-1));
        emit(Rel::Le, Rat(0), kTagPlumbing);
        row.add(g, Rat(1));
        row.add(av, Rat(-1));
        emit(Rel::Le, Rat(0), kTagPlumbing);
        row.add(g, Rat(1));
        row.add(s.link(l), Rat(-1));
        row.add(av, Rat(-1));
        emit(Rel::Ge, Rat(-1), kTagPlumbing);
      }
    }

  // A link carries flow exactly when both endpoint tasks are assigned, so
  // the two gate sums agree; stated directly it surfaces missing-producer
  // conflicts at assignment time rather than deep in the routing layer.
  for (int l = 0; l < s.n_links; ++l) {
    for (const auto& [d, av] : s.assigns_of(links[l].src_task)) {
      (void)av;
      row.add(s.gate(d, l, 0), Rat(1));
    }
    for (const auto& [d, av] : s.assigns_of(links[l].snk_task)) {
      (void)av;
      row.add(s.gate(d, l, 1), Rat(-1));
    }
    if (row.has_terms() || !s.assigns_of(links[l].src_task).empty() ||
        !s.assigns_of(links[l].snk_task).empty())
      emit(Rel::Eq, Rat(0), kTagPlumbing);
  }

  // (l) flow conservation, per selected encoding.
  std::vector<std::vector<int>> incident(s.n_devices);
  for (int k = 0; k < s.n_nonloop; ++k) {
    incident[conns[k].dev_u].push_back(k);
    incident[conns[k].dev_v].push_back(k);
  }
  if (options.flow_mode == FlowMode::kDirected) {
    for (int k = 0; k < s.n_nonloop; ++k)
      for (int l = 0; l < s.n_links; ++l) {
        row.add(s.route(k, l), Rat(1));
        row.add(s.arc(k, l, 0), Rat(-1));
        row.add(s.arc(k, l, 1), Rat(-1));
        emit(Rel::Eq, Rat(0), kTagPlumbing);
        row.add(s.arc(k, l, 0), Rat(1));
        row.add(s.arc(k, l, 1), Rat(1));
        emit(Rel::Le, Rat(1), kTagPlumbing);
      }
    for (int l = 0; l < s.n_links; ++l)
      for (int d = 0; d < s.n_devices; ++d) {
        bool any = !incident[d].empty();
        for (int k : incident[d]) {
          int out_dir = d == conns[k].dev_u ? 0 : 1;
          row.add(s.arc(k, l, out_dir), Rat(1));
          row.add(s.arc(k, l, 1 - out_dir), Rat(-1));
        }
        int gs = s.gate(d, l, 0);
        int gt = s.gate(d, l, 1);
        if (gs >= 0) row.add(gs, Rat(-1));
        if (gt >= 0) row.add(gt, Rat(1));
        if (any || gs >= 0 || gt >= 0) emit(Rel::Eq, Rat(0), kTagFlowConservation);
      }
  } else {
    for (int l = 0; l < s.n_links; ++l)
      for (int d = 0; d < s.n_devices; ++d) {
        int gs = s.gate(d, l, 0);
        int gt = s.gate(d, l, 1);
        int thr = s.dummy(d, l, 0);
        int pair = s.dummy(d, l, 1);
        if (incident[d].empty() && gs < 0 && gt < 0) continue;
        for (int k : incident[d]) row.add(s.route(k, l), Rat(1));
        if (gs >= 0) row.add(gs, Rat(-1));
        if (gt >= 0) row.add(gt, Rat(-1));
        if (pair >= 0) row.add(pair, Rat(2));
        if (thr >= 0) row.add(thr, Rat(-2));
        emit(Rel::Eq, Rat(0), kTagFlowBalance);
        if (pair >= 0) {
          row.add(pair, Rat(1));
          row.add(gs, Rat(-1));
          emit(Rel::Le, Rat(0), kTagPlumbing);
          row.add(pair, Rat(1));
          row.add(gt, Rat(-1));
          emit(Rel::Le, Rat(0), kTagPlumbing);
          row.add(pair, Rat(1));
          row.add(gs, Rat(-1));
          row.add(gt, Rat(-1));
          emit(Rel::Ge, Rat(-1), kTagPlumbing);
        }
        if (thr >= 0) {
          row.add(thr, Rat(1));
          row.add(s.link(l), Rat(-1));
          emit(Rel::Le, Rat(0), kTagPlumbing);
        }
      }
  }

  // (m) bandwidth limits on bounded connections.
  for (int k = 0; k < s.n_nonloop; ++k) {
    if (!conns[k].bandwidth) continue;
    bool any = false;
    for (int l = 0; l < s.n_links; ++l) {
      Rat demand = link_demand(links[l], conns[k]);
      if (demand.is_zero()) continue;
      row.add(s.route(k, l), demand);
      any = true;
    }
    if (any) emit(Rel::Le, *conns[k].bandwidth, kTagBandwidth);
  }

  return prog;
}

Rat evaluate_objective(const Program& program, const std::vector<char>& values) {
  Rat total;
  for (std::size_t i = 0; i < program.objective.size(); ++i)
    if (values[i] && !program.objective[i].is_zero()) total += program.objective[i];
  return total;
}

std::string export_lp(const Program& program) {
  std::ostringstream out;
  out << "\\ sysynth 0/1 program\n";
  out << "Minimize\n obj:";
  int n = 0;
  for (std::size_t i = 0; i < program.objective.size(); ++i) {
    const Rat& c = program.objective[i];
    if (c.is_zero()) continue;
    if (n > 0 && n % 8 == 0) out << "\n   ";
    if (c.is_negative())
      out << " - " << double_str(-c.to_double()) << " " << program.var_names[i];
    else
      out << (n == 0 ? " " : " + ") << double_str(c.to_double()) << " " << program.var_names[i];
    ++n;
  }
  out << "\nSubject To\n";
  for (std::size_t ci = 0; ci < program.constraints.size(); ++ci) {
    const Constraint& c = program.constraints[ci];
    out << " c" << ci << "_" << c.tag << ":";
    int t = 0;
    for (const auto& [v, coef] : c.terms) {
      if (t > 0 && t % 8 == 0) out << "\n   ";
      if (coef.is_negative())
        out << " - " << double_str(-coef.to_double()) << " " << program.var_names[v];
      else
        out << (t == 0 ? " " : " + ") << double_str(coef.to_double()) << " " << program.var_names[v];
      ++t;
    }
    const char* rel = c.rel == Rel::Le ? "<=" : c.rel == Rel::Ge ? ">=" : "=";
    out << " " << rel << " " << double_str(c.rhs.to_double()) << "\n";
  }
  out << "Binaries\n";
  for (std::size_t i = 0; i < program.var_names.size(); ++i) {
    if (i % 6 == 0) out << (i == 0 ? " " : "\n ");
    else out << " ";
    out << program.var_names[i];
  }
  if (!program.var_names.empty()) out << "\n";
  out << "End\n";
  return out.str();
}

std::string export_mps(const Program& program) {
  std::size_t width = 8;
  for (const auto& name : program.var_names) width = std::max(width, name.size());
  for (std::size_t ci = 0; ci < program.constraints.size(); ++ci)
    width = std::max(width, 2 + std::to_string(ci).size() + 1 + program.constraints[ci].tag.size());
  width += 2;
  auto pad = [&](const std::string& f) {
    std::string s = f;
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
  };
  auto row_name = [&](std::size_t ci) {
    return "c" + std::to_string(ci) + "_" + program.constraints[ci].tag;
  };

  std::ostringstream out;
  out << "NAME          sysynth\n";
  out << "ROWS\n N  obj\n";
  for (std::size_t ci = 0; ci < program.constraints.size(); ++ci) {
    const char* rel = program.constraints[ci].rel == Rel::Le   ? "L"
                      : program.constraints[ci].rel == Rel::Ge ? "G"
                                                               : "E";
    out << " " << rel << "  " << row_name(ci) << "\n";
  }

  // Column-major entries; objective first, then rows in emission order.
  std::vector<std::vector<std::pair<std::string, Rat>>> columns(program.var_count());
  for (std::size_t i = 0; i < program.var_count(); ++i)
    if (!program.objective[i].is_zero()) columns[i].emplace_back("obj", program.objective[i]);
  for (std::size_t ci = 0; ci < program.constraints.size(); ++ci)
    for (const auto& [v, coef] : program.constraints[ci].terms)
      columns[v].emplace_back(row_name(ci), coef);

  out << "COLUMNS\n";
  out << "    " << pad("MARKER") << pad("'MARKER'") << "'INTORG'\n";
  for (std::size_t i = 0; i < program.var_count(); ++i) {
    if (columns[i].empty()) columns[i].emplace_back("obj", Rat(0));
    for (std::size_t e = 0; e < columns[i].size(); e += 2) {
      out << "    " << pad(program.var_names[i]) << pad(columns[i][e].first)
          << double_str(columns[i][e].second.to_double());
      if (e + 1 < columns[i].size()) {
        std::string first = double_str(columns[i][e].second.to_double());
        if (first.size() < width) out << std::string(width - first.size(), ' ');
        else out << "  ";
        out << pad(columns[i][e + 1].first) << double_str(columns[i][e + 1].second.to_double());
      }
      out << "\n";
    }
  }
  out << "    " << pad("MARKER") << pad("'MARKER'") << "'INTEND'\n";

  out << "RHS\n";
  for (std::size_t ci = 0; ci < program.constraints.size(); ++ci) {
    if (program.constraints[ci].rhs.is_zero()) continue;
    out << "    " << pad("RHS") << pad(row_name(ci))
        << double_str(program.constraints[ci].rhs.to_double()) << "\n";
  }

  out << "BOUNDS\n";
  for (const auto& name : program.var_names) out << " BV " << pad("BND") << name << "\n";
  out << "ENDATA\n";
  return out.str();
}

}  // namespace sysynth
