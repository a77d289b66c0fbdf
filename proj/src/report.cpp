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

#include "sysynth/report.hpp"

#include <sstream>

#include <json.hpp>

namespace sysynth {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json rat_block(const Rat& r) {
  ordered_json j;
  j["decimal"] = r.to_double();
  j["exact"] = std::to_string(r.num()) + "/" + std::to_string(r.den());
  return j;
}

ordered_json connection_json(const ProblemInstance& inst, const CandidateConnection& c) {
  ordered_json j;
  j["transport"] = c.is_loop ? kLoopbackTransportId : inst.dims.transports[c.transport].id;
  j["u"] = inst.devices[c.dev_u].id;
  j["v"] = inst.devices[c.dev_v].id;
  return j;
}

int resolve_connection(const ProblemInstance& inst,
                       const std::vector<CandidateConnection>& conns, const ordered_json& j) {
  std::string transport = j.at("transport").get<std::string>();
  int u = inst.device_index(j.at("u").get<std::string>());
  int v = inst.device_index(j.at("v").get<std::string>());
  if (u < 0 || v < 0) throw ReferenceError("solution names an unknown device in a connection");
  if (u > v) std::swap(u, v);
  for (const auto& c : conns) {
    if (c.dev_u != u || c.dev_v != v) continue;
    const std::string& x = c.is_loop ? kLoopbackTransportId : inst.dims.transports[c.transport].id;
    if (x == transport) return c.index;
  }
  throw ReferenceError("solution names a connection that is not a candidate: " + transport);
}

}  // namespace

std::string solution_to_json(const ProblemInstance& inst,
                             const std::vector<CandidateConnection>& conns,
                             const std::vector<CandidateLink>& links, const Program& program,
                             const Solution& solution, const std::string& digest) {
  const VarSpace& s = program.space;
  ordered_json doc;
  doc["format"] = "sysynth.solution/1";
  doc["instance_digest"] = digest;
  doc["flow_mode"] = s.flow_mode == FlowMode::kDirected ? "directed" : "dummy";
  doc["status"] = to_string(solution.status);
  doc["variable_count"] = program.var_count();
  if (!solution.values.empty()) {
    doc["objective"] = rat_block(solution.objective);
    doc["lower_bound"] = rat_block(solution.lower_bound);
    ordered_json devs = ordered_json::array();
    for (int d = 0; d < s.n_devices; ++d)
      if (solution.values[s.dev(d)]) devs.push_back(inst.devices[d].id);
    doc["devices"] = devs;
    ordered_json cs = ordered_json::array();
    for (int k = 0; k < s.n_conns; ++k)
      if (solution.values[s.cnx(k)]) cs.push_back(connection_json(inst, conns[k]));
    doc["connections"] = cs;
    ordered_json assignment = ordered_json::object();
    for (int p = 0; p < s.n_tasks; ++p) {
      ordered_json hosts = ordered_json::array();
      for (const auto& [d, av] : s.assigns_of(p))
        if (solution.values[av]) hosts.push_back(inst.devices[d].id);
      if (!hosts.empty()) assignment[inst.tasks[p].id] = hosts;
    }
    doc["assignment"] = assignment;
    ordered_json ls = ordered_json::array();
    ordered_json routes = ordered_json::object();
    for (int l = 0; l < s.n_links; ++l) {
      if (!solution.values[s.link(l)]) continue;
      std::string name = link_name(inst, links[l]);
      ls.push_back(name);
      ordered_json path = ordered_json::array();
      for (int k = 0; k < s.n_nonloop; ++k)
        if (solution.values[s.route(k, l)]) path.push_back(connection_json(inst, conns[k]));
      routes[name] = path;
    }
    doc["links"] = ls;
    doc["routes"] = routes;
  } else {
    doc["lower_bound"] = rat_block(solution.lower_bound);
  }
  ordered_json stats;
  stats["nodes"] = solution.stats.nodes;
  stats["propagations"] = solution.stats.propagations;
  doc["stats"] = stats;
  return doc.dump(2) + "\n";
}

ParsedSolution solution_from_json(const ProblemInstance& inst,
                                  const std::vector<CandidateConnection>& conns,
                                  const std::vector<CandidateLink>& links, const VarSpace& space,
                                  const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("solution document: ") + e.what());
  }
  ParsedSolution out;
  out.digest = doc.value("instance_digest", "");
  out.status = doc.value("status", "");
  out.values.assign(space.vars.size(), 0);

  if (doc.contains("devices"))
    for (const auto& j : doc["devices"]) {
      int d = inst.device_index(j.get<std::string>());
      if (d < 0) throw ReferenceError("solution names unknown device '" + j.get<std::string>() + "'");
      out.values[space.dev(d)] = 1;
    }
  if (doc.contains("connections"))
    for (const auto& j : doc["connections"])
      out.values[space.cnx(resolve_connection(inst, conns, j))] = 1;
  if (doc.contains("assignment"))
    for (auto it = doc["assignment"].begin(); it != doc["assignment"].end(); ++it) {
      int p = inst.task_index(it.key());
      if (p < 0) throw ReferenceError("solution names unknown task '" + it.key() + "'");
      for (const auto& host : it.value()) {
        int d = inst.device_index(host.get<std::string>());
        int av = d < 0 ? -1 : space.assign(d, p);
        if (av < 0)
          throw ReferenceError("solution assigns task '" + it.key() + "' to an incompatible device");
        out.values[av] = 1;
      }
    }
  std::map<std::string, int> link_by_name;
  for (const auto& l : links) link_by_name[link_name(inst, l)] = l.index;
  if (doc.contains("links"))
    for (const auto& j : doc["links"]) {
      auto it = link_by_name.find(j.get<std::string>());
      if (it == link_by_name.end())
        throw ReferenceError("solution names unknown link '" + j.get<std::string>() + "'");
      out.values[space.link(it->second)] = 1;
    }
  if (doc.contains("routes"))
    for (auto it = doc["routes"].begin(); it != doc["routes"].end(); ++it) {
      auto found = link_by_name.find(it.key());
      if (found == link_by_name.end())
        throw ReferenceError("solution routes unknown link '" + it.key() + "'");
      for (const auto& j : it.value()) {
        int k = resolve_connection(inst, conns, j);
        if (k >= space.n_nonloop)
          continue;  // loopback entries carry no route variable
        out.values[space.route(k, found->second)] = 1;
      }
    }
  return out;
}

std::string system_to_json(const ProblemInstance& inst,
                           const std::vector<CandidateConnection>& conns,
                           const std::vector<CandidateLink>& links, const SynthesizedSystem& sys,
                           const std::string& digest) {
  ordered_json doc;
  doc["format"] = "sysynth.system/1";
  doc["instance_digest"] = digest;
  ordered_json mods = ordered_json::array();
  for (int m : sys.selected_modules) mods.push_back(inst.modules[m].id);
  doc["selected_modules"] = mods;

  ordered_json hw;
  ordered_json devs = ordered_json::array();
  for (int d : sys.devices) devs.push_back(inst.devices[d].id);
  hw["devices"] = devs;
  ordered_json cs = ordered_json::array();
  for (int k : sys.connections) cs.push_back(connection_json(inst, conns[k]));
  hw["connections"] = cs;
  doc["hardware"] = hw;

  ordered_json sw;
  ordered_json tasks = ordered_json::array();
  for (int p : sys.tasks) tasks.push_back(inst.tasks[p].id);
  sw["tasks"] = tasks;
  ordered_json ls = ordered_json::array();
  for (int l : sys.links) ls.push_back(link_name(inst, links[l]));
  sw["links"] = ls;
  doc["software"] = sw;

  ordered_json assignment = ordered_json::object();
  for (const auto& [p, d] : sys.assignment) assignment[inst.tasks[p].id] = inst.devices[d].id;
  doc["assignment"] = assignment;

  ordered_json routes = ordered_json::object();
  for (const auto& [l, path] : sys.routes) {
    ordered_json jp = ordered_json::array();
    for (int k : path) jp.push_back(connection_json(inst, conns[k]));
    routes[link_name(inst, links[l])] = jp;
  }
  doc["routes"] = routes;

  ordered_json margins;
  ordered_json dm = ordered_json::object();
  for (const auto& [d, vec] : sys.device_margins) {
    ordered_json entry = ordered_json::object();
    for (std::size_t w = 0; w < vec.size(); ++w)
      entry[inst.dims.resources[w].id] = vec[w].to_double();
    dm[inst.devices[d].id] = entry;
  }
  margins["devices"] = dm;
  ordered_json cm = ordered_json::array();
  for (const auto& [k, left] : sys.connection_margins) {
    ordered_json entry = connection_json(inst, conns[k]);
    if (left)
      entry["bandwidth"] = left->to_double();
    else
      entry["bandwidth"] = "unbounded";
    cm.push_back(entry);
  }
  margins["connections"] = cm;
  doc["margins"] = margins;
  return doc.dump(2) + "\n";
}

std::string check_report_to_json(const CheckReport& report) {
  ordered_json doc;
  doc["format"] = "sysynth.check/1";
  doc["ok"] = report.ok;
  ordered_json vs = ordered_json::array();
  for (const auto& v : report.violations) {
    ordered_json jv;
    jv["tag"] = v.tag;
    jv["element"] = v.element;
    jv["detail"] = v.detail;
    vs.push_back(jv);
  }
  doc["violations"] = vs;
  return doc.dump(2) + "\n";
}

std::string hardware_dot(const ProblemInstance& inst,
                         const std::vector<CandidateConnection>& conns,
                         const SynthesizedSystem& sys) {
  std::ostringstream out;
  out << "graph hardware {\n";
  out << "  node [shape=box];\n";
  for (int d : sys.devices) out << "  \"" << inst.devices[d].id << "\";\n";
  for (int k : sys.connections) {
    const auto& c = conns[k];
    if (c.is_loop) continue;  // loopbacks clutter the drawing, carry no data
    out << "  \"" << inst.devices[c.dev_u].id << "\" -- \"" << inst.devices[c.dev_v].id
        << "\" [label=\"" << inst.dims.transports[c.transport].id << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string software_dot(const ProblemInstance& inst, const std::vector<CandidateLink>& links,
                         const SynthesizedSystem& sys) {
  std::ostringstream out;
  out << "digraph software {\n";
  out << "  node [shape=ellipse];\n";
  for (int p : sys.tasks) {
    out << "  \"" << inst.tasks[p].id << "\"";
    auto it = sys.assignment.find(p);
    if (it != sys.assignment.end())
      out << " [label=\"" << inst.tasks[p].id << "\\n@" << inst.devices[it->second].id << "\"]";
    out << ";\n";
  }
  for (int l : sys.links) {
    const auto& lk = links[l];
    out << "  \"" << inst.tasks[lk.src_task].id << "\" -> \"" << inst.tasks[lk.snk_task].id
        << "\" [label=\"" << inst.dims.message_types[lk.msg_type] << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace sysynth
