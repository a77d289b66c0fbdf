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

#ifndef SYSYNTH_MODEL_HPP
#define SYSYNTH_MODEL_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "sysynth/catalog.hpp"
#include "sysynth/expansion.hpp"

namespace sysynth {

// Variable kinds, in branching/tie-breaking priority order. Dev through
// Route are the semantic decisions; Arc, Gate and Dummy are encoding
// auxiliaries whose values are implied by the semantic ones in any
// feasible vector.
enum class VarKind { Dev, Assign, Cnx, Link, Route, Arc, Gate, Dummy };

struct VarId {
  VarKind kind;
  // Dev:    a=device
  // Assign: a=device, b=task
  // Cnx:    a=connection
  // Link:   a=link
  // Route:  a=connection, b=link
  // Arc:    a=connection, b=link, c=direction (0: u->v, 1: v->u)
  // Gate:   a=device, b=link, c=endpoint (0: source task, 1: sink task)
  // Dummy:  a=device, b=link, c=role (0: pass-through, 1: co-location)
  int a = -1;
  int b = -1;
  int c = -1;
};

// Flow-conservation encodings. Directed introduces two arc variables per
// (connection, link) and conserves oriented flow per device. Dummy keeps
// the undirected route variables and balances per-device routed degree
// with dummy pass-through/co-location variables; it is kept for
// cross-checking and produces equal optimal values.
enum class FlowMode { kDirected, kDummy };

constexpr const char* kTagMission = "mission";
constexpr const char* kTagContext = "context";
constexpr const char* kTagModuleTaskAtomicity = "module_task_atomicity";
constexpr const char* kTagModuleDeviceAtomicity = "module_device_atomicity";
constexpr const char* kTagTaskSelection = "task_selection";
constexpr const char* kTagExecOnActive = "exec_on_active";
constexpr const char* kTagResourceBudget = "resource_budget";
constexpr const char* kTagCnxOnActiveDevice = "cnx_on_active_device";
constexpr const char* kTagCnxCapacity = "cnx_capacity";
constexpr const char* kTagInputSatisfaction = "input_satisfaction";
constexpr const char* kTagLinkSemantics = "link_semantics";
constexpr const char* kTagRouteOnActiveCnx = "route_on_active_cnx";
constexpr const char* kTagFlowConservation = "flow_conservation";
constexpr const char* kTagFlowBalance = "flow_balance";
constexpr const char* kTagBandwidth = "bandwidth";
constexpr const char* kTagPlumbing = "plumbing";

// Constraint families that must all be present in a program generated from
// an instance exercising every feature, for the given flow mode.
std::vector<std::string> required_constraint_tags(FlowMode mode);

// The variable universe for an instance + candidate expansion. Assignment
// variables exist only for compatible (device, task) pairs: the task names
// the device in its consumption map and the device offers a positive
// amount of every resource the task consumes there. Route/Arc variables
// exist only for non-loop connections.
class VarSpace {
 public:
  FlowMode flow_mode = FlowMode::kDirected;
  int n_devices = 0;
  int n_tasks = 0;
  int n_conns = 0;
  int n_nonloop = 0;  // non-loop connections occupy candidate indices [0, n_nonloop)
  int n_links = 0;

  std::vector<VarId> vars;  // canonical order: kind-major, index-ascending
  int semantic_count = 0;   // vars[0..semantic_count) are Dev/Assign/Cnx/Link/Route

  // Candidate topology, kept here so a Program is self-contained.
  std::vector<int> conn_u, conn_v;      // per connection, conn_u <= conn_v
  std::vector<int> link_src, link_snk;  // per link, endpoint task indices
  bool conn_incident(int k, int d) const { return conn_u[k] == d || conn_v[k] == d; }

  int dev(int d) const { return d; }
  int assign(int d, int p) const {
    auto it = assign_ix_.find({d, p});
    return it == assign_ix_.end() ? -1 : it->second;
  }
  int cnx(int k) const { return cnx_base_ + k; }
  int link(int l) const { return link_base_ + l; }
  // Route and arc blocks are laid out link-major so one link's routing
  // decisions are contiguous in the branching order.
  int route(int k, int l) const { return route_base_ + l * n_nonloop + k; }
  int arc(int k, int l, int dir) const { return arc_base_ + (l * n_nonloop + k) * 2 + dir; }
  int gate(int d, int l, int endpoint) const {
    auto it = gate_ix_.find({l, endpoint, d});
    return it == gate_ix_.end() ? -1 : it->second;
  }
  int dummy(int d, int l, int role) const {
    auto it = dummy_ix_.find({l, d, role});
    return it == dummy_ix_.end() ? -1 : it->second;
  }

  // Compatible (device, assign-var) pairs per task, device-ascending.
  const std::vector<std::pair<int, int>>& assigns_of(int p) const { return assigns_by_task_[p]; }

  friend VarSpace make_var_space(const ProblemInstance&, const std::vector<CandidateConnection>&,
                                 const std::vector<CandidateLink>&, FlowMode);

 private:
  int cnx_base_ = 0;
  int link_base_ = 0;
  int route_base_ = 0;
  int arc_base_ = 0;
  std::map<std::pair<int, int>, int> assign_ix_;
  std::map<std::tuple<int, int, int>, int> gate_ix_;
  std::map<std::tuple<int, int, int>, int> dummy_ix_;
  std::vector<std::vector<std::pair<int, int>>> assigns_by_task_;
};

VarSpace make_var_space(const ProblemInstance& inst,
                        const std::vector<CandidateConnection>& conns,
                        const std::vector<CandidateLink>& links, FlowMode mode);

// exposable[d][w]: some candidate connection could grant device d resource w.
using ExposureMatrix = std::vector<std::vector<char>>;
ExposureMatrix exposure_matrix(const ProblemInstance& inst,
                               const std::vector<CandidateConnection>& conns);

// A task can run on a device when the task names it in its consumption map
// and every resource consumed there is either held by the device or
// obtainable from a candidate connection. Resources a device holds none of
// and cannot be granted make the pair incompatible (no variable exists).
bool device_task_compatible(const ProblemInstance& inst, const ExposureMatrix& exposable, int d,
                            int p);

enum class Rel { Le, Eq, Ge };

struct Constraint {
  std::vector<std::pair<int, Rat>> terms;  // (variable index, coefficient), index-ascending
  Rel rel = Rel::Le;
  Rat rhs;
  std::string tag;  // constraint family
};

// Module data the solver's admissible bound works from: the variables whose
// unit activations raise the module toward full selection, the objective
// cost carried per unit, and the capability granted once complete.
struct ModuleBound {
  std::vector<int> device_vars;               // one per device member
  std::vector<std::vector<int>> task_assign_vars;  // per task member, its assign vars
  int member_count = 0;
  Rat cost_per_unit;
  std::vector<Rat> capability;
};

// Solver-agnostic 0/1 minimization program.
struct Program {
  VarSpace space;
  std::vector<std::string> var_names;
  std::vector<Rat> objective;  // per variable
  std::vector<Constraint> constraints;

  // Bound metadata (see ModuleBound).
  std::vector<ModuleBound> module_bounds;
  std::vector<Rat> requirements;  // mission r_s

  std::size_t var_count() const { return space.vars.size(); }
};

struct BuildOptions {
  FlowMode flow_mode = FlowMode::kDirected;
  // Constant objective charge for activating a real (non-loopback)
  // connection. Small by default so structure never outweighs a component
  // choice.
  Rat eps_cnx = Rat(1, 1000);
  std::optional<Weights> weight_override;
};

// Generates the full program: variables, the tagged constraint families,
// and the weighted objective. Deterministic and pure.
Program build_program(const ProblemInstance& inst,
                      const std::vector<CandidateConnection>& conns,
                      const std::vector<CandidateLink>& links,
                      const BuildOptions& options = {});

// Cost primitives, shared with the validation oracle.
Rat exec_cost(const ProblemInstance& inst, int d, int p);
Rat route_cost(const CandidateLink& link, const CandidateConnection& conn);
Rat module_cost(const ProblemInstance& inst, const Module& mod);

// Objective restricted to semantic selections, for callers that hold a full
// value vector.
Rat evaluate_objective(const Program& program, const std::vector<char>& values);

// Text exchange exports. Variable names follow the program's name table;
// both forms re-import to the same constraint matrix.
std::string export_lp(const Program& program);
std::string export_mps(const Program& program);

}  // namespace sysynth

#endif  // SYSYNTH_MODEL_HPP
