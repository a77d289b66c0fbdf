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

#include "sysynth/solver.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <thread>

namespace sysynth {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "OPTIMAL";
    case SolveStatus::kInfeasible: return "INFEASIBLE";
    case SolveStatus::kTimeoutIncumbent: return "TIMEOUT_INCUMBENT";
    case SolveStatus::kTimeoutNone: return "TIMEOUT_NONE";
  }
  return "UNKNOWN";
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
  __int128 l = (__int128)(a / std::gcd(a, b)) * b;
  if (l > (INT64_C(1) << 50)) throw std::overflow_error("constraint scaling overflow");
  return (std::int64_t)l;
}

std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
  __int128 m = (__int128)a * b;
  if (m > (INT64_C(1) << 60) || m < -(INT64_C(1) << 60))
    throw std::overflow_error("constraint scaling overflow");
  return (std::int64_t)m;
}

// Replaces each active link's routed edge set by the simple path its flow
// decomposes into, dropping cost-neutral cycle artifacts, and recomputes
// the implied encoding auxiliaries. Keeps feasibility, never raises cost.
void strip_route_cycles(const Program& prog, std::vector<char>& v) {
  const VarSpace& s = prog.space;
  for (int l = 0; l < s.n_links; ++l) {
    int src_dev = -1, snk_dev = -1;
    for (const auto& [d, av] : s.assigns_of(s.link_src[l]))
      if (v[av]) src_dev = d;
    for (const auto& [d, av] : s.assigns_of(s.link_snk[l]))
      if (v[av]) snk_dev = d;

    std::vector<int> routed;
    for (int k = 0; k < s.n_nonloop; ++k)
      if (v[s.route(k, l)]) routed.push_back(k);

    std::vector<int> path;  // connection indices from src to snk
    bool keep_as_is = false;
    if (v[s.link(l)] && src_dev >= 0 && snk_dev >= 0 && src_dev != snk_dev) {
      // BFS over the routed edges, ascending index for determinism.
      std::vector<int> via(s.n_devices, -1);
      std::vector<char> seen(s.n_devices, 0);
      std::vector<int> frontier{src_dev};
      seen[src_dev] = 1;
      while (!frontier.empty() && !seen[snk_dev]) {
        std::vector<int> next;
        for (int d : frontier)
          for (int k : routed) {
            if (s.conn_u[k] != d && s.conn_v[k] != d) continue;
            int o = s.conn_u[k] == d ? s.conn_v[k] : s.conn_u[k];
            if (seen[o]) continue;
            seen[o] = 1;
            via[o] = k;
            next.push_back(o);
          }
        frontier = std::move(next);
      }
      if (!seen[snk_dev]) {
        keep_as_is = true;  // not a conserving vector; leave untouched
      } else {
        for (int d = snk_dev; d != src_dev;) {
          int k = via[d];
          path.push_back(k);
          d = s.conn_u[k] == d ? s.conn_v[k] : s.conn_u[k];
        }
        std::reverse(path.begin(), path.end());
      }
    }
    if (keep_as_is) continue;

    for (int k : routed) {
      v[s.route(k, l)] = 0;
      if (s.flow_mode == FlowMode::kDirected) {
        v[s.arc(k, l, 0)] = 0;
        v[s.arc(k, l, 1)] = 0;
      }
    }
    std::vector<char> interior(s.n_devices, 0);
    int at = src_dev;
    for (int k : path) {
      v[s.route(k, l)] = 1;
      int dir = s.conn_u[k] == at ? 0 : 1;
      if (s.flow_mode == FlowMode::kDirected) v[s.arc(k, l, dir)] = 1;
      at = s.conn_u[k] == at ? s.conn_v[k] : s.conn_u[k];
      if (at != snk_dev) interior[at] = 1;
    }
    if (s.flow_mode == FlowMode::kDummy) {
      for (int d = 0; d < s.n_devices; ++d) {
        int thr = s.dummy(d, l, 0);
        if (thr >= 0) v[thr] = interior[d];
      }
    }
  }
}

class Engine {
 public:
  explicit Engine(const Program& prog) : prog_(prog), space_(prog.space) {
    const std::size_t n = prog.var_count();
    value_.assign(n, -1);
    trail_pos_.assign(n, 0);
    watch_.assign(n, {});
    rows_.reserve(prog.constraints.size());
    for (std::size_t ci = 0; ci < prog.constraints.size(); ++ci) {
      const Constraint& c = prog.constraints[ci];
      Row row;
      std::int64_t scale = c.rhs.den();
      for (const auto& [vi, r] : c.terms) scale = lcm_checked(scale, r.den());
      row.rhs = mul_checked(c.rhs.num(), scale / c.rhs.den());
      row.rel = c.rel;
      for (const auto& [vi, r] : c.terms) {
        std::int64_t coef = mul_checked(r.num(), scale / r.den());
        if (coef == 0) continue;
        if (coef > 0) row.max_act += coef;
        else row.min_act += coef;
        watch_[vi].push_back((int)rows_.size());
        row.terms.emplace_back(vi, coef);
      }
      rows_.push_back(std::move(row));
    }
    in_queue_.assign(rows_.size(), 0);
    for (const Rat& c : prog.objective)
      if (c.is_negative()) has_negative_obj_ = true;
    if (has_negative_obj_)
      for (const Rat& c : prog.objective)
        if (c.is_negative()) neg_unfixed_ += c;
    met_.assign(prog.requirements.size(), Rat(0));
    unmet_.assign(prog.requirements.size(), Rat(0));
    var_module_.assign(n, -1);
    for (std::size_t m = 0; m < prog.module_bounds.size(); ++m) {
      for (int dv : prog.module_bounds[m].device_vars) var_module_[dv] = (int)m;
      for (const auto& avars : prog.module_bounds[m].task_assign_vars)
        for (int av : avars) var_module_[av] = (int)m;
    }
    module_useful_.assign(prog.module_bounds.size(), 0);
  }

  // --- assignment machinery ---------------------------------------------

  bool assign(int var, bool val) {
    if (value_[var] != -1) return value_[var] == (char)val;
    value_[var] = (char)val;
    trail_pos_[var] = trail_.size();
    trail_.push_back(var);
    if (val) committed_ += prog_.objective[var];
    if (has_negative_obj_ && prog_.objective[var].is_negative())
      neg_unfixed_ -= prog_.objective[var];
    for (int ri : watch_[var]) {
      Row& row = rows_[ri];
      std::int64_t coef = 0;
      for (const auto& [vi, c] : row.terms)
        if (vi == var) {
          coef = c;
          break;
        }
      if (val) {
        if (coef > 0) row.min_act += coef;
        else row.max_act += coef;
      } else {
        if (coef > 0) row.max_act -= coef;
        else row.min_act -= coef;
      }
      if (!in_queue_[ri]) {
        in_queue_[ri] = 1;
        queue_.push_back(ri);
      }
    }
    return true;
  }

  void unassign(int var) {
    bool val = value_[var] == 1;
    value_[var] = -1;
    if (val) committed_ -= prog_.objective[var];
    if (has_negative_obj_ && prog_.objective[var].is_negative())
      neg_unfixed_ += prog_.objective[var];
    for (int ri : watch_[var]) {
      Row& row = rows_[ri];
      std::int64_t coef = 0;
      for (const auto& [vi, c] : row.terms)
        if (vi == var) {
          coef = c;
          break;
        }
      if (val) {
        if (coef > 0) row.min_act -= coef;
        else row.max_act -= coef;
      } else {
        if (coef > 0) row.max_act += coef;
        else row.min_act += coef;
      }
    }
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      unassign(trail_.back());
      trail_.pop_back();
    }
    for (int ri : queue_) in_queue_[ri] = 0;
    queue_.clear();
    conflict_row_ = -1;
  }

  // Bound-consistency propagation over the scaled rows, to fixpoint.
  bool propagate() {
    while (!queue_.empty()) {
      int ri = queue_.back();
      queue_.pop_back();
      in_queue_[ri] = 0;
      Row& row = rows_[ri];
      bool upper = row.rel != Rel::Ge;  // activity must stay <= rhs
      bool lower = row.rel != Rel::Le;  // activity must stay >= rhs
      if (upper && row.min_act > row.rhs) {
        conflict_row_ = ri;
        return false;
      }
      if (lower && row.max_act < row.rhs) {
        conflict_row_ = ri;
        return false;
      }
      for (const auto& [vi, coef] : row.terms) {
        if (value_[vi] != -1) continue;
        if (upper) {
          if (coef > 0 && row.min_act + coef > row.rhs) {
            ++propagations_;
            if (!assign(vi, false)) {
              conflict_row_ = ri;
              return false;
            }
            continue;
          }
          if (coef < 0 && row.min_act - coef > row.rhs) {
            ++propagations_;
            if (!assign(vi, true)) {
              conflict_row_ = ri;
              return false;
            }
            continue;
          }
        }
        if (lower) {
          if (coef > 0 && row.max_act - coef < row.rhs) {
            ++propagations_;
            if (!assign(vi, true)) {
              conflict_row_ = ri;
              return false;
            }
            continue;
          }
          if (coef < 0 && row.max_act + coef < row.rhs) {
            ++propagations_;
            if (!assign(vi, false)) {
              conflict_row_ = ri;
              return false;
            }
          }
        }
      }
    }
    return true;
  }

  // Seeds the queue with every row so constraint-only implications fire.
  bool propagate_root() {
    for (std::size_t ri = 0; ri < rows_.size(); ++ri)
      if (!in_queue_[ri]) {
        in_queue_[ri] = 1;
        queue_.push_back((int)ri);
      }
    return propagate();
  }

  // Exact feasibility of a complete 0/1 vector against every row.
  bool vector_feasible(const std::vector<char>& v) const {
    for (const Row& row : rows_) {
      std::int64_t activity = 0;
      for (const auto& [vi, coef] : row.terms)
        if (v[vi]) activity += coef;
      if (row.rel != Rel::Ge && activity > row.rhs) return false;
      if (row.rel != Rel::Le && activity < row.rhs) return false;
    }
    return true;
  }

  // --- admissible bound ---------------------------------------------------

  struct Bound {
    bool cover_impossible = false;
    bool any_unmet = false;
    Rat value;
  };

  Bound bound() {
    Bound b;
    b.value = committed_;
    if (has_negative_obj_) {
      b.value += neg_unfixed_;
      return b;  // conservative fallback; module term needs non-negative costs
    }
    const auto& mods = prog_.module_bounds;
    const std::size_t Q = prog_.requirements.size();
    if (Q == 0 || mods.empty()) return b;

    for (std::size_t q = 0; q < Q; ++q) met_[q] = Rat(0);
    module_state_.assign(mods.size(), 0);  // 1 excluded, 2 complete, 0 open
    module_remaining_.assign(mods.size(), 0);
    for (std::size_t m = 0; m < mods.size(); ++m) {
      const ModuleBound& mb = mods[m];
      if (mb.member_count == 0) {
        module_state_[m] = 1;
        continue;
      }
      int units = 0;
      bool excluded = false;
      for (int dv : mb.device_vars) {
        if (value_[dv] == 1) ++units;
        else if (value_[dv] == 0) excluded = true;
      }
      for (const auto& avars : mb.task_assign_vars) {
        bool one = false, all_zero = true;
        for (int av : avars) {
          if (value_[av] == 1) {
            one = true;
            all_zero = false;
            break;
          }
          if (value_[av] != 0) all_zero = false;
        }
        if (one) ++units;
        else if (all_zero) excluded = true;
      }
      if (excluded) {
        module_state_[m] = 1;
      } else if (units == mb.member_count) {
        module_state_[m] = 2;
        for (std::size_t q = 0; q < Q; ++q) met_[q] += mb.capability[q];
      } else {
        module_remaining_[m] = mb.member_count - units;
      }
    }

    Rat sum_unmet;
    for (std::size_t q = 0; q < Q; ++q) {
      unmet_[q] = prog_.requirements[q] - met_[q];
      if (unmet_[q].is_negative()) unmet_[q] = Rat(0);
      sum_unmet += unmet_[q];
    }
    std::fill(module_useful_.begin(), module_useful_.end(), 0);
    if (sum_unmet.is_zero()) return b;
    b.any_unmet = true;
    for (std::size_t m = 0; m < mods.size(); ++m) {
      if (module_state_[m] != 0) continue;
      for (std::size_t q = 0; q < Q; ++q)
        if (!unmet_[q].is_zero() && !mods[m].capability[q].is_zero()) {
          module_useful_[m] = 1;
          break;
        }
    }

    // Cheapest cost-per-capability density over the still-open modules,
    // with per-module capability capped at what is actually unmet.
    bool have_density = false;
    Rat min_density;
    std::vector<char> coverable(Q, 0);
    for (std::size_t m = 0; m < mods.size(); ++m) {
      if (module_state_[m] != 0) continue;
      const ModuleBound& mb = mods[m];
      Rat capped;
      for (std::size_t q = 0; q < Q; ++q) {
        if (unmet_[q].is_zero() || mb.capability[q].is_zero()) continue;
        coverable[q] = 1;
        capped += mb.capability[q] < unmet_[q] ? mb.capability[q] : unmet_[q];
      }
      if (capped.is_zero()) continue;
      Rat density = mb.cost_per_unit * Rat(module_remaining_[m]) / capped;
      if (!have_density || density < min_density) {
        min_density = density;
        have_density = true;
      }
    }
    for (std::size_t q = 0; q < Q; ++q)
      if (!unmet_[q].is_zero() && !coverable[q]) {
        b.cover_impossible = true;
        return b;
      }
    if (have_density) b.value += min_density * sum_unmet;
    return b;
  }

  // --- search -------------------------------------------------------------

  Solution run(const SolverConfig& config,
               const std::vector<std::pair<int, bool>>& initial_fixes, bool allow_phase2) {
    Solution sol;
    auto t0 = Clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };

    bool root_ok = true;
    for (const auto& [var, val] : initial_fixes)
      if (!assign(var, val)) root_ok = false;
    if (root_ok) root_ok = propagate_root();
    root_mark_ = trail_.size();

    bool have_best = false;
    std::vector<char> best_values;
    Rat best_obj;

    struct Frame {
      int var;
      int first_val;
      bool on_second;
      std::size_t trail_mark;
      Rat node_lb;
      std::size_t ptr;
    };
    std::vector<Frame> frames;
    std::size_t ptr = 0;
    const std::size_t n = prog_.var_count();

    auto budget_ok = [&] {
      if (nodes_ >= config.node_limit) return false;
      if ((check_counter_++ & 127) == 0 && elapsed() > config.time_limit_seconds) return false;
      return true;
    };

    auto shed_connections = [&](std::vector<char>& vals) {
      // Activation charges for connections nothing routes over; budget rows
      // veto the ones whose exposure credit is load-bearing.
      for (int k = space_.n_nonloop - 1; k >= 0; --k) {
        int cv = space_.cnx(k);
        if (!vals[cv] || prog_.objective[cv].is_zero()) continue;
        bool carries = false;
        for (int l = 0; l < space_.n_links && !carries; ++l)
          carries = vals[space_.route(k, l)] != 0;
        if (carries) continue;
        vals[cv] = 0;
        if (!vector_feasible(vals)) vals[cv] = 1;
      }
    };

    // Tries to deactivate one module wholesale: members, their incident
    // connections, every link touching a member task, and the implied
    // encoding auxiliaries. The exact row check vetoes drops that break
    // mission coverage, feed a surviving input, or strand a route.
    auto shed_module = [&](std::vector<char>& vals, std::size_t m) {
      const ModuleBound& mb = prog_.module_bounds[m];
      if (mb.member_count == 0) return;
      bool active = false;
      for (int dv : mb.device_vars) active |= vals[dv] != 0;
      for (const auto& avars : mb.task_assign_vars)
        for (int av : avars) active |= vals[av] != 0;
      if (!active) return;

      std::vector<char> member_dev(space_.n_devices, 0), member_task(space_.n_tasks, 0);
      for (int dv : mb.device_vars) member_dev[space_.vars[dv].a] = 1;
      for (const auto& avars : mb.task_assign_vars)
        if (!avars.empty()) member_task[space_.vars[avars[0]].b] = 1;

      std::vector<char> trial = vals;
      for (int dv : mb.device_vars) trial[dv] = 0;
      for (const auto& avars : mb.task_assign_vars)
        for (int av : avars) trial[av] = 0;
      // Surviving tasks hosted on a member device lose their seat; the
      // atomicity rows veto that unless the whole arrangement still works.
      for (int p = 0; p < space_.n_tasks; ++p) {
        if (member_task[p]) continue;
        for (const auto& [d, av] : space_.assigns_of(p))
          if (member_dev[d]) trial[av] = 0;
      }
      for (int l = 0; l < space_.n_links; ++l) {
        bool drop_link = member_task[space_.link_src[l]] || member_task[space_.link_snk[l]];
        for (int endpoint = 0; endpoint < 2; ++endpoint) {
          int task = endpoint == 0 ? space_.link_src[l] : space_.link_snk[l];
          for (const auto& [d, av] : space_.assigns_of(task)) {
            (void)av;
            if (drop_link || member_dev[d]) {
              int g = space_.gate(d, l, endpoint);
              if (g >= 0) trial[g] = 0;
            }
          }
        }
        if (!drop_link) {
          // Routes of surviving links over a member device's connections
          // would need rerouting; leave those drops to another node.
          for (int k = 0; k < space_.n_nonloop; ++k)
            if (trial[space_.route(k, l)] &&
                (member_dev[space_.conn_u[k]] || member_dev[space_.conn_v[k]]))
              return;
          continue;
        }
        trial[space_.link(l)] = 0;
        for (int k = 0; k < space_.n_nonloop; ++k) {
          trial[space_.route(k, l)] = 0;
          if (space_.flow_mode == FlowMode::kDirected) {
            trial[space_.arc(k, l, 0)] = 0;
            trial[space_.arc(k, l, 1)] = 0;
          }
        }
        if (space_.flow_mode == FlowMode::kDummy)
          for (int d = 0; d < space_.n_devices; ++d)
            for (int role = 0; role < 2; ++role) {
              int dum = space_.dummy(d, l, role);
              if (dum >= 0) trial[dum] = 0;
            }
      }
      for (int k = 0; k < space_.n_conns; ++k)
        if (member_dev[space_.conn_u[k]] || member_dev[space_.conn_v[k]])
          trial[space_.cnx(k)] = 0;
      if (vector_feasible(trial)) vals = std::move(trial);
    };

    auto store_incumbent = [&] {
      std::vector<char> vals((std::size_t)n);
      for (std::size_t i = 0; i < n; ++i) vals[i] = value_[i] == 1;
      strip_route_cycles(prog_, vals);
      for (std::size_t m = prog_.module_bounds.size(); m-- > 0;) shed_module(vals, m);
      shed_connections(vals);
      Rat obj = evaluate_objective(prog_, vals);
      if (!have_best || obj < best_obj) {
        best_obj = obj;
        best_values = std::move(vals);
        have_best = true;
      }
    };

    // Returns false when the tree is exhausted.
    auto backtrack = [&]() -> bool {
      while (!frames.empty()) {
        Frame& f = frames.back();
        undo_to(f.trail_mark);
        ptr = f.ptr;
        if (!f.on_second) {
          f.on_second = true;
          if (have_best && f.node_lb >= best_obj) {
            frames.pop_back();
            continue;
          }
          ++nodes_;
          if (assign(f.var, f.first_val == 0) && propagate()) return true;
          undo_to(f.trail_mark);
          frames.pop_back();
          continue;
        }
        frames.pop_back();
      }
      return false;
    };

    // Phase 1: prove the optimal value, diving toward feasibility first.
    bool exhausted = false;
    if (!root_ok) {
      exhausted = true;
    } else {
      while (true) {
        if (!budget_ok()) break;
        while (ptr < n && value_[ptr] != -1) ++ptr;
        if (ptr == n) {
          store_incumbent();
          if (!backtrack()) {
            exhausted = true;
            break;
          }
          continue;
        }
        Bound b = bound();
        if (b.cover_impossible || (have_best && b.value >= best_obj)) {
          if (!backtrack()) {
            exhausted = true;
            break;
          }
          continue;
        }
        VarKind kind = space_.vars[ptr].kind;
        int branch_var = (int)ptr;
        int first = 0;
        if (b.any_unmet && (kind == VarKind::Dev || kind == VarKind::Assign)) {
          int m = var_module_[ptr];
          if (m >= 0 && module_useful_[m]) first = 1;
        }
        // Keeping real connections on costs only the small activation
        // charge and leaves the routing layer a connected substrate; the
        // capacity rows prune the surplus.
        if (kind == VarKind::Cnx && space_.vars[ptr].a < space_.n_nonloop) first = 1;
        if (kind == VarKind::Route) {
          RouteBranch rb = routing_branch(ptr);
          if (rb.conflict) {
            if (rb.jump != SIZE_MAX)
              while (!frames.empty() && frames.back().trail_mark > rb.jump) {
                undo_to(frames.back().trail_mark);
                frames.pop_back();
              }
            if (!backtrack()) {
              exhausted = true;
              break;
            }
            continue;
          }
          if (!rb.decision) {
            if (assign(rb.var, rb.val == 1) && propagate()) continue;
            if (!backtrack()) {
              exhausted = true;
              break;
            }
            continue;
          }
          branch_var = rb.var;
          first = rb.val;
        }
        frames.push_back({branch_var, first, false, trail_.size(), b.value, ptr});
        ++nodes_;
        if (!(assign(branch_var, first == 1) && propagate())) {
          if (!backtrack()) {
            exhausted = true;
            break;
          }
        }
      }
    }

    if (!exhausted) {
      // Budget ran out: report the incumbent with the proven bound over the
      // open part of the tree.
      sol.status = have_best ? SolveStatus::kTimeoutIncumbent : SolveStatus::kTimeoutNone;
      bool have_open = false;
      Rat open_lb;
      for (const Frame& f : frames)
        if (!f.on_second && (!have_open || f.node_lb < open_lb)) {
          open_lb = f.node_lb;
          have_open = true;
        }
      Bound current = bound();
      if (!current.cover_impossible && (!have_open || current.value < open_lb)) {
        open_lb = current.value;
        have_open = true;
      }
      if (have_best) {
        sol.values = best_values;
        sol.objective = best_obj;
        sol.lower_bound = have_open && open_lb < best_obj ? open_lb : best_obj;
      } else if (have_open) {
        sol.lower_bound = open_lb;
      }
      sol.stats.nodes = nodes_;
      sol.stats.propagations = propagations_;
      sol.stats.wall_seconds = elapsed();
      return sol;
    }

    if (!have_best) {
      sol.status = SolveStatus::kInfeasible;
      sol.stats.nodes = nodes_;
      sol.stats.propagations = propagations_;
      sol.stats.wall_seconds = elapsed();
      return sol;
    }

    sol.status = SolveStatus::kOptimal;
    sol.objective = best_obj;
    sol.lower_bound = best_obj;
    sol.values = best_values;

    // Phase 2: walk the tree in lexicographic order (0 before 1) and stop
    // at the first optimum, which is the lexicographically least one.
    if (allow_phase2 && n > 0) {
      undo_to(root_mark_);
      frames.clear();
      ptr = 0;
      while (true) {
        if (!budget_ok()) break;  // keep the phase 1 vector; value already proven
        while (ptr < n && value_[ptr] != -1) ++ptr;
        if (ptr == n) {
          std::vector<char> vals((std::size_t)n);
          for (std::size_t i = 0; i < n; ++i) vals[i] = value_[i] == 1;
          sol.values = std::move(vals);
          break;
        }
        Bound b = bound();
        if (b.cover_impossible || b.value > best_obj) {
          if (!backtrack_lex(frames, ptr)) break;
          continue;
        }
        frames.push_back({(int)ptr, 0, false, trail_.size(), b.value, ptr});
        ++nodes_;
        if (!(assign((int)ptr, false) && propagate())) {
          if (!backtrack_lex(frames, ptr)) break;
        }
      }
    }

    sol.stats.nodes = nodes_;
    sol.stats.propagations = propagations_;
    sol.stats.wall_seconds = elapsed();
    return sol;
  }


  struct RouteBranch {
    bool conflict = false;
    std::size_t jump = SIZE_MAX;  // certificate backjump point for conflicts
    bool decision = false;        // filler zeros carry no sibling
    int var = -1;
    int val = 0;
  };

  // May link l's flow leave device `from` over connection k, given the
  // current route and arc values?
  bool can_traverse(int k, int l, int from) const {
    if (value_[space_.route(k, l)] == 0) return false;
    if (space_.flow_mode == FlowMode::kDirected) {
      int dir = space_.conn_u[k] == from ? 0 : 1;
      if (value_[space_.arc(k, l, dir)] == 0) return false;
    }
    return true;
  }

  // Routing-aware branching for the route block. The edges of a link that
  // are already 1 are absorbed into a directed walk leaving the source
  // device; the next decision extends the walk along a breadth-first path
  // toward the sink (extend-the-edge versus forbid-the-edge), so each
  // link's search enumerates simple paths. Off-path edges are pinned to
  // zero without a sibling once the sink is reached: a route set with
  // surplus edges is never cheaper than its cycle-free core, so optimal
  // values are preserved. States that cannot embed into any simple
  // source-sink path are pruned, with a certificate position for
  // backjumping when the graph itself is cut.
  RouteBranch routing_branch(std::size_t ptr) {
    const VarId& v = space_.vars[ptr];
    const int l = v.b;
    RouteBranch rb;
    auto filler = [&] {
      rb.var = (int)ptr;
      rb.val = 0;
      return rb;
    };
    auto dead = [&] {
      rb.conflict = true;
      return rb;
    };
    if (value_[space_.link(l)] != 1) return filler();
    int src_dev = -1, snk_dev = -1;
    for (const auto& [d, av] : space_.assigns_of(space_.link_src[l]))
      if (value_[av] == 1) src_dev = d;
    for (const auto& [d, av] : space_.assigns_of(space_.link_snk[l]))
      if (value_[av] == 1) snk_dev = d;
    if (src_dev < 0 || snk_dev < 0) return filler();

    std::vector<int> ones;
    for (int k = 0; k < space_.n_nonloop; ++k)
      if (value_[space_.route(k, l)] == 1) ones.push_back(k);
    if (src_dev == snk_dev) return ones.empty() ? filler() : dead();

    // Absorb routed edges into the walk, following any established arc
    // orientation.
    std::vector<char> used(ones.size(), 0);
    std::vector<char> visited(space_.n_devices, 0);
    visited[src_dev] = 1;
    int tip = src_dev;
    std::size_t used_count = 0;
    while (tip != snk_dev) {
      int step = -1;
      for (std::size_t i = 0; i < ones.size(); ++i) {
        if (used[i] || !space_.conn_incident(ones[i], tip)) continue;
        if (!can_traverse(ones[i], l, tip)) return dead();  // points back at the walk
        if (step >= 0) return dead();                       // walk branches
        step = (int)i;
      }
      if (step < 0) break;
      used[step] = 1;
      ++used_count;
      tip = space_.conn_u[ones[step]] == tip ? space_.conn_v[ones[step]] : space_.conn_u[ones[step]];
      if (visited[tip]) return dead();  // walk closed a cycle
      visited[tip] = 1;
    }
    if (tip == snk_dev)
      return used_count == ones.size() ? filler() : dead();  // dead: stranded routed edges

    // Extend toward the sink: breadth-first over traversable edges that
    // avoid the walk, then branch on the edge leaving the tip.
    std::vector<int> via(space_.n_devices, -1);
    std::vector<char> seen = visited;
    seen[tip] = 1;
    std::vector<int> frontier{tip};
    while (!frontier.empty() && !seen[snk_dev]) {
      std::vector<int> next;
      for (int d : frontier)
        for (int k = 0; k < space_.n_nonloop; ++k) {
          if (!space_.conn_incident(k, d) || !can_traverse(k, l, d)) continue;
          int o = space_.conn_u[k] == d ? space_.conn_v[k] : space_.conn_u[k];
          if (seen[o]) continue;
          seen[o] = 1;
          via[o] = k;
          next.push_back(o);
        }
      frontier = std::move(next);
    }
    if (!seen[snk_dev]) {
      // Certificate: the walk plus every blocked edge crossing the reached
      // set. Decisions made after the newest certificate literal cannot
      // restore a path, so their siblings are skippable.
      rb.jump = 0;
      for (std::size_t i = 0; i < ones.size(); ++i)
        rb.jump = std::max(rb.jump, trail_pos_[space_.route(ones[i], l)]);
      for (int k = 0; k < space_.n_nonloop; ++k) {
        bool su = seen[space_.conn_u[k]], sv = seen[space_.conn_v[k]];
        if (su == sv) continue;
        int from = su ? space_.conn_u[k] : space_.conn_v[k];
        int rv = space_.route(k, l);
        if (value_[rv] == 0) {
          rb.jump = std::max(rb.jump, trail_pos_[rv]);
        } else if (space_.flow_mode == FlowMode::kDirected) {
          int dir = space_.conn_u[k] == from ? 0 : 1;
          int av = space_.arc(k, l, dir);
          if (value_[av] == 0) rb.jump = std::max(rb.jump, trail_pos_[av]);
        }
      }
      return dead();
    }
    int back = snk_dev;
    int edge = -1;
    while (back != tip) {
      edge = via[back];
      back = space_.conn_u[edge] == back ? space_.conn_v[edge] : space_.conn_u[edge];
    }
    if (value_[space_.route(edge, l)] == 1) return filler();  // settled by propagation
    rb.decision = true;
    rb.var = space_.route(edge, l);
    rb.val = 1;
    return rb;
  }

  const VarSpace& space() const { return space_; }

  std::int64_t propagations() const { return propagations_; }
  const std::vector<char>& raw_values() const { return value_; }
  int conflict_row() const { return conflict_row_; }
  const std::vector<int>& trail() const { return trail_; }
  Rat committed() const { return committed_; }

 private:
  template <typename FrameVec>
  bool backtrack_lex(FrameVec& frames, std::size_t& ptr) {
    while (!frames.empty()) {
      auto& f = frames.back();
      undo_to(f.trail_mark);
      ptr = f.ptr;
      if (!f.on_second) {
        f.on_second = true;
        ++nodes_;
        if (assign(f.var, true) && propagate()) return true;
        undo_to(f.trail_mark);
        frames.pop_back();
        continue;
      }
      frames.pop_back();
    }
    return false;
  }

  struct Row {
    std::vector<std::pair<int, std::int64_t>> terms;
    std::int64_t rhs = 0;
    Rel rel = Rel::Le;
    std::int64_t min_act = 0;
    std::int64_t max_act = 0;
  };

  const Program& prog_;
  const VarSpace& space_;
  std::vector<Row> rows_;
  std::vector<std::vector<int>> watch_;
  std::vector<char> value_;
  std::vector<std::size_t> trail_pos_;
  std::vector<int> trail_;
  std::vector<int> queue_;
  std::vector<char> in_queue_;
  int conflict_row_ = -1;
  Rat committed_;
  Rat neg_unfixed_;
  bool has_negative_obj_ = false;
  std::size_t root_mark_ = 0;
  std::int64_t nodes_ = 0;
  std::int64_t propagations_ = 0;
  std::uint64_t check_counter_ = 0;
  int src_dev_dbg_ = -1, snk_dev_dbg_ = -1;
  std::uint64_t conflict_count_ = 0;

  // bound() scratch
  std::vector<Rat> met_, unmet_;
  std::vector<char> module_state_;
  std::vector<int> module_remaining_;
  std::vector<int> var_module_;
  std::vector<char> module_useful_;
};

}  // namespace

Solution solve(const Program& program, const SolverConfig& config) {
  if (config.deterministic) {
    Engine engine(program);
    return engine.run(config, {}, /*allow_phase2=*/true);
  }

  // Parallel mode: split on the first branch variable and search both
  // halves independently. Same optimal objective, unspecified tie-break.
  int split_var = -1;
  {
    Engine probe(program);
    if (probe.propagate_root()) {
      const auto& vals = probe.raw_values();
      for (std::size_t i = 0; i < vals.size(); ++i)
        if (vals[i] == -1) {
          split_var = (int)i;
          break;
        }
    }
  }
  if (split_var < 0) {
    Engine engine(program);
    return engine.run(config, {}, false);
  }

  Solution half[2];
  std::thread t0([&] {
    Engine engine(program);
    half[0] = engine.run(config, {{split_var, false}}, false);
  });
  std::thread t1([&] {
    Engine engine(program);
    half[1] = engine.run(config, {{split_var, true}}, false);
  });
  t0.join();
  t1.join();

  Solution merged;
  merged.stats.nodes = half[0].stats.nodes + half[1].stats.nodes;
  merged.stats.propagations = half[0].stats.propagations + half[1].stats.propagations;
  merged.stats.wall_seconds = std::max(half[0].stats.wall_seconds, half[1].stats.wall_seconds);

  const Solution* best = nullptr;
  for (const Solution& s : half)
    if (!s.values.empty() && (!best || s.objective < best->objective)) best = &s;

  bool c0 = half[0].status == SolveStatus::kOptimal || half[0].status == SolveStatus::kInfeasible;
  bool c1 = half[1].status == SolveStatus::kOptimal || half[1].status == SolveStatus::kInfeasible;
  auto side_lb = [&](int i) {
    if (half[i].status == SolveStatus::kInfeasible) return std::optional<Rat>();
    return std::optional<Rat>(half[i].lower_bound);
  };
  std::optional<Rat> lb;
  for (int i = 0; i < 2; ++i) {
    auto s = side_lb(i);
    if (s && (!lb || *s < *lb)) lb = s;
  }

  if (c0 && c1) {
    if (!best) {
      merged.status = SolveStatus::kInfeasible;
      return merged;
    }
    merged.status = SolveStatus::kOptimal;
  } else if (best && lb && best->objective == *lb) {
    merged.status = SolveStatus::kOptimal;
  } else {
    merged.status = best ? SolveStatus::kTimeoutIncumbent : SolveStatus::kTimeoutNone;
  }
  if (best) {
    merged.values = best->values;
    merged.objective = best->objective;
    merged.lower_bound = merged.status == SolveStatus::kOptimal ? best->objective
                         : lb ? *lb : best->objective;
  } else if (lb) {
    merged.lower_bound = *lb;
  }
  return merged;
}

PropagationOutcome propagate(const Program& program,
                             const std::vector<std::pair<int, bool>>& fixed) {
  Engine engine(program);
  PropagationOutcome out;
  for (const auto& [var, val] : fixed)
    if (!engine.assign(var, val)) {
      out.conflict = true;
      return out;
    }
  std::size_t given = engine.trail().size();
  if (!engine.propagate_root()) {
    out.conflict = true;
    out.conflict_constraint = engine.conflict_row();
    return out;
  }
  const auto& trail = engine.trail();
  for (std::size_t i = given; i < trail.size(); ++i)
    out.fixings.emplace_back(trail[i], engine.raw_values()[trail[i]] == 1);
  return out;
}

std::optional<Rat> lower_bound(const Program& program,
                               const std::vector<std::pair<int, bool>>& fixed) {
  Engine engine(program);
  for (const auto& [var, val] : fixed)
    if (!engine.assign(var, val)) return std::nullopt;
  // Bound of the partial assignment as given; no propagation.
  auto b = engine.bound();
  if (b.cover_impossible) return std::nullopt;
  return b.value;
}

}  // namespace sysynth
