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

#include "sysynth/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sysynth/digest.hpp"

namespace sysynth {

using ordered_json = nlohmann::ordered_json;

namespace {

bool valid_identifier(const std::string& id) {
  if (id.empty()) return false;
  if (!std::isalpha((unsigned char)id[0]) && id[0] != '_') return false;
  for (char c : id)
    if (!std::isalnum((unsigned char)c) && c != '_' && c != '.') return false;
  return true;
}

void require_identifier(const std::string& id, const std::string& what) {
  if (!valid_identifier(id))
    throw ParseError("invalid identifier '" + id + "' for " + what +
                     " (want [A-Za-z_][A-Za-z0-9_.]*)");
}

Rat to_rat(const ordered_json& v, const std::string& what) {
  if (v.is_number_integer()) return Rat((std::int64_t)v.get<std::int64_t>());
  if (v.is_number_unsigned()) {
    auto u = v.get<std::uint64_t>();
    if (u > (std::uint64_t)INT64_MAX) throw ParseError(what + ": number out of range");
    return Rat((std::int64_t)u);
  }
  if (v.is_number_float()) return Rat::from_double(v.get<double>());
  throw ParseError(what + ": expected a number");
}

const ordered_json& member(const ordered_json& obj, const char* key, const std::string& what) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(what + ": missing key '" + key + "'");
  return *it;
}

std::map<std::string, int> index_of(const std::vector<std::string>& ids) {
  std::map<std::string, int> m;
  for (int i = 0; i < (int)ids.size(); ++i) m.emplace(ids[i], i);
  return m;
}

// Reads an identifier-keyed map of numbers into a dense vector over the
// given dimension list. Absent keys are zero; unknown keys are reference
// errors.
std::vector<Rat> read_keyed(const ordered_json& obj, const std::map<std::string, int>& index,
                            std::size_t size, const std::string& what) {
  std::vector<Rat> out(size, Rat(0));
  if (obj.is_null()) return out;
  if (!obj.is_object()) throw ParseError(what + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    auto found = index.find(it.key());
    if (found == index.end())
      throw ReferenceError(what + ": unknown identifier '" + it.key() + "'");
    out[found->second] = to_rat(it.value(), what + "." + it.key());
  }
  return out;
}

std::map<std::string, Rat> read_open_map(const ordered_json& obj, const std::string& what) {
  std::map<std::string, Rat> out;
  if (obj.is_null()) return out;
  if (!obj.is_object()) throw ParseError(what + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    require_identifier(it.key(), what + " key");
    out[it.key()] = to_rat(it.value(), what + "." + it.key());
  }
  return out;
}

ordered_json rat_json(const Rat& r) {
  if (r.is_integer()) return ordered_json(r.num());
  return ordered_json(r.to_double());
}

ordered_json keyed_json(const std::vector<Rat>& values, const std::vector<std::string>& ids) {
  ordered_json out = ordered_json::object();
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!values[i].is_zero()) out[ids[i]] = rat_json(values[i]);
  return out;
}

}  // namespace

int ProblemInstance::device_index(const std::string& id) const {
  for (int i = 0; i < (int)devices.size(); ++i)
    if (devices[i].id == id) return i;
  return -1;
}

int ProblemInstance::task_index(const std::string& id) const {
  for (int i = 0; i < (int)tasks.size(); ++i)
    if (tasks[i].id == id) return i;
  return -1;
}

ProblemInstance load_instance(const std::string& document) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("instance document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance document: expected a JSON object");

  ProblemInstance inst;

  // dims
  const auto& dims = member(doc, "dims", "instance");
  std::vector<std::string> resource_ids, transport_ids;
  for (const auto& r : member(dims, "resources", "dims")) {
    Dimensions::Resource res;
    if (r.is_string()) {
      res.id = r.get<std::string>();
    } else {
      res.id = member(r, "id", "dims.resources").get<std::string>();
      if (r.contains("unit")) res.unit = r["unit"].get<std::string>();
    }
    require_identifier(res.id, "resource");
    if (std::find(resource_ids.begin(), resource_ids.end(), res.id) != resource_ids.end())
      throw ParseError("duplicate resource id '" + res.id + "'");
    resource_ids.push_back(res.id);
    inst.dims.resources.push_back(res);
  }
  for (const auto& t : member(dims, "transports", "dims")) {
    TransportDef def;
    def.id = member(t, "id", "dims.transports").get<std::string>();
    require_identifier(def.id, "transport");
    if (def.id == kLoopbackTransportId)
      throw ParseError("transport id 'loopback' is reserved");
    if (std::find(transport_ids.begin(), transport_ids.end(), def.id) != transport_ids.end())
      throw ParseError("duplicate transport id '" + def.id + "'");
    transport_ids.push_back(def.id);
    const auto& bw = member(t, "bandwidth", "transport " + def.id);
    if (bw.is_string()) {
      if (bw.get<std::string>() != "unbounded")
        throw ParseError("transport " + def.id + ": bandwidth must be a number or \"unbounded\"");
      def.bandwidth = std::nullopt;
    } else {
      def.bandwidth = to_rat(bw, "transport " + def.id + ".bandwidth");
    }
    def.overhead_factor = t.contains("overhead_factor")
                              ? to_rat(t["overhead_factor"], "transport " + def.id + ".overhead_factor")
                              : Rat(1);
    def.physical = t.contains("physical") ? t["physical"].get<bool>() : false;
    inst.dims.transports.push_back(def);
  }
  auto read_id_list = [&](const char* key, std::vector<std::string>& out) {
    for (const auto& v : member(dims, key, "dims")) {
      std::string id = v.get<std::string>();
      require_identifier(id, key);
      if (std::find(out.begin(), out.end(), id) != out.end())
        throw ParseError(std::string("duplicate ") + key + " id '" + id + "'");
      out.push_back(id);
    }
  };
  read_id_list("context_dims", inst.dims.context_dims);
  read_id_list("function_dims", inst.dims.function_dims);
  read_id_list("message_types", inst.dims.message_types);

  auto rix = index_of(resource_ids);
  auto xix = index_of(transport_ids);
  auto jix = index_of(inst.dims.context_dims);
  auto qix = index_of(inst.dims.function_dims);
  auto mix = index_of(inst.dims.message_types);

  // devices
  std::map<std::string, int> dix;
  for (const auto& d : member(doc, "devices", "instance")) {
    Device dev;
    dev.id = member(d, "id", "devices").get<std::string>();
    require_identifier(dev.id, "device");
    if (!dix.emplace(dev.id, (int)inst.devices.size()).second)
      throw ParseError("duplicate device id '" + dev.id + "'");
    dev.resources = read_keyed(d.contains("resources") ? d["resources"] : ordered_json(),
                               rix, resource_ids.size(), "device " + dev.id + ".resources");
    auto caps = read_keyed(d.contains("cnx_capacity") ? d["cnx_capacity"] : ordered_json(),
                           xix, transport_ids.size(), "device " + dev.id + ".cnx_capacity");
    for (const auto& c : caps) {
      if (!c.is_integer() || c.is_negative())
        throw ParseError("device " + dev.id + ": cnx_capacity entries must be non-negative integers");
      dev.cnx_capacity.push_back(c.num());
    }
    dev.exposes.assign(transport_ids.size(), {});
    if (d.contains("exposes")) {
      const auto& ex = d["exposes"];
      if (!ex.is_object()) throw ParseError("device " + dev.id + ".exposes: expected an object");
      for (auto it = ex.begin(); it != ex.end(); ++it) {
        auto found = xix.find(it.key());
        if (found == xix.end())
          throw ReferenceError("device " + dev.id + ".exposes: unknown transport '" + it.key() + "'");
        dev.exposes[found->second] =
            read_keyed(it.value(), rix, resource_ids.size(),
                       "device " + dev.id + ".exposes." + it.key());
      }
    }
    dev.cost = d.contains("cost") ? to_rat(d["cost"], "device " + dev.id + ".cost") : Rat(0);
    inst.devices.push_back(std::move(dev));
  }

  // tasks
  std::map<std::string, int> tix;
  for (const auto& t : member(doc, "tasks", "instance")) {
    Task task;
    task.id = member(t, "id", "tasks").get<std::string>();
    require_identifier(task.id, "task");
    if (!tix.emplace(task.id, (int)inst.tasks.size()).second)
      throw ParseError("duplicate task id '" + task.id + "'");
    if (t.contains("consumption")) {
      const auto& cons = t["consumption"];
      if (!cons.is_object()) throw ParseError("task " + task.id + ".consumption: expected an object");
      for (auto it = cons.begin(); it != cons.end(); ++it) {
        auto found = dix.find(it.key());
        if (found == dix.end())
          throw ReferenceError("task " + task.id + ".consumption: unknown device '" + it.key() + "'");
        task.consumption[found->second] =
            read_keyed(it.value(), rix, resource_ids.size(),
                       "task " + task.id + ".consumption." + it.key());
      }
    }
    task.context_req = read_keyed(t.contains("context_req") ? t["context_req"] : ordered_json(),
                                  jix, inst.dims.context_dims.size(),
                                  "task " + task.id + ".context_req");
    if (t.contains("inputs")) {
      for (const auto& in : t["inputs"]) {
        InputPort port;
        port.id = member(in, "id", "task " + task.id + ".inputs").get<std::string>();
        require_identifier(port.id, "input port");
        std::string mt = member(in, "msg_type", "input " + task.id + "." + port.id).get<std::string>();
        auto found = mix.find(mt);
        if (found == mix.end())
          throw ReferenceError("input " + task.id + "." + port.id + ": unknown message type '" + mt + "'");
        port.msg_type = found->second;
        if (in.contains("requires"))
          port.requires_sem = read_open_map(in["requires"], "input " + task.id + "." + port.id + ".requires");
        task.inputs.push_back(std::move(port));
      }
    }
    if (t.contains("outputs")) {
      for (const auto& out : t["outputs"]) {
        OutputPort port;
        port.id = member(out, "id", "task " + task.id + ".outputs").get<std::string>();
        require_identifier(port.id, "output port");
        std::string mt = member(out, "msg_type", "output " + task.id + "." + port.id).get<std::string>();
        auto found = mix.find(mt);
        if (found == mix.end())
          throw ReferenceError("output " + task.id + "." + port.id + ": unknown message type '" + mt + "'");
        port.msg_type = found->second;
        if (out.contains("provides"))
          port.provides = read_open_map(out["provides"], "output " + task.id + "." + port.id + ".provides");
        port.nominal_rate = out.contains("nominal_rate")
                                ? to_rat(out["nominal_rate"], "output " + task.id + "." + port.id + ".nominal_rate")
                                : Rat(0);
        task.outputs.push_back(std::move(port));
      }
    }
    inst.tasks.push_back(std::move(task));
  }

  // modules
  std::map<std::string, int> nix;
  for (const auto& m : member(doc, "modules", "instance")) {
    Module mod;
    mod.id = member(m, "id", "modules").get<std::string>();
    require_identifier(mod.id, "module");
    if (!nix.emplace(mod.id, (int)inst.modules.size()).second)
      throw ParseError("duplicate module id '" + mod.id + "'");
    if (m.contains("devices")) {
      for (const auto& d : m["devices"]) {
        auto found = dix.find(d.get<std::string>());
        if (found == dix.end())
          throw ReferenceError("module " + mod.id + ": unknown device '" + d.get<std::string>() + "'");
        mod.devices.push_back(found->second);
      }
    }
    if (m.contains("tasks")) {
      for (const auto& t : m["tasks"]) {
        auto found = tix.find(t.get<std::string>());
        if (found == tix.end())
          throw ReferenceError("module " + mod.id + ": unknown task '" + t.get<std::string>() + "'");
        mod.tasks.push_back(found->second);
      }
    }
    mod.capability = read_keyed(m.contains("capability") ? m["capability"] : ordered_json(),
                                qix, inst.dims.function_dims.size(),
                                "module " + mod.id + ".capability");
    mod.overhead_cost = m.contains("overhead_cost")
                            ? to_rat(m["overhead_cost"], "module " + mod.id + ".overhead_cost")
                            : Rat(0);
    inst.modules.push_back(std::move(mod));
  }

  // mission
  const auto& mi = member(doc, "mission", "instance");
  inst.mission.context = read_keyed(mi.contains("context") ? mi["context"] : ordered_json(),
                                    jix, inst.dims.context_dims.size(), "mission.context");
  inst.mission.requirements = read_keyed(mi.contains("requirements") ? mi["requirements"] : ordered_json(),
                                         qix, inst.dims.function_dims.size(), "mission.requirements");
  if (mi.contains("cnx_forbidden")) {
    for (const auto& pair : mi["cnx_forbidden"]) {
      if (!pair.is_array() || pair.size() != 2)
        throw ShapeError("mission.cnx_forbidden: entries must be pairs");
      int a = -1, b = -1;
      for (int i = 0; i < 2; ++i) {
        auto found = dix.find(pair[i].get<std::string>());
        if (found == dix.end())
          throw ReferenceError("mission.cnx_forbidden: unknown device '" + pair[i].get<std::string>() + "'");
        (i == 0 ? a : b) = found->second;
      }
      inst.mission.cnx_forbidden.emplace(std::min(a, b), std::max(a, b));
    }
  }

  // weights
  if (doc.contains("weights")) {
    const auto& w = doc["weights"];
    if (!w.is_array() || w.size() != 3)
      throw ShapeError("weights: expected a triple [module, exec, routing]");
    inst.weights.module_cost = to_rat(w[0], "weights[0]");
    inst.weights.exec = to_rat(w[1], "weights[1]");
    inst.weights.routing = to_rat(w[2], "weights[2]");
  }

  return inst;
}

ProblemInstance load_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_instance(buf.str());
}

std::string serialize_instance(const ProblemInstance& inst) {
  ordered_json doc;
  ordered_json dims;
  dims["resources"] = ordered_json::array();
  std::vector<std::string> resource_ids, transport_ids;
  for (const auto& r : inst.dims.resources) {
    dims["resources"].push_back({{"id", r.id}, {"unit", r.unit}});
    resource_ids.push_back(r.id);
  }
  dims["transports"] = ordered_json::array();
  for (const auto& t : inst.dims.transports) {
    ordered_json jt;
    jt["id"] = t.id;
    if (t.bandwidth)
      jt["bandwidth"] = rat_json(*t.bandwidth);
    else
      jt["bandwidth"] = "unbounded";
    jt["overhead_factor"] = rat_json(t.overhead_factor);
    jt["physical"] = t.physical;
    dims["transports"].push_back(jt);
    transport_ids.push_back(t.id);
  }
  dims["context_dims"] = inst.dims.context_dims;
  dims["function_dims"] = inst.dims.function_dims;
  dims["message_types"] = inst.dims.message_types;
  doc["dims"] = dims;

  doc["devices"] = ordered_json::array();
  for (const auto& d : inst.devices) {
    ordered_json jd;
    jd["id"] = d.id;
    jd["resources"] = keyed_json(d.resources, resource_ids);
    ordered_json caps = ordered_json::object();
    for (std::size_t x = 0; x < d.cnx_capacity.size(); ++x)
      if (d.cnx_capacity[x] != 0) caps[transport_ids[x]] = d.cnx_capacity[x];
    jd["cnx_capacity"] = caps;
    ordered_json ex = ordered_json::object();
    for (std::size_t x = 0; x < d.exposes.size(); ++x) {
      if (d.exposes[x].empty()) continue;
      ordered_json m = keyed_json(d.exposes[x], resource_ids);
      if (!m.empty()) ex[transport_ids[x]] = m;
    }
    jd["exposes"] = ex;
    jd["cost"] = rat_json(d.cost);
    doc["devices"].push_back(jd);
  }

  doc["tasks"] = ordered_json::array();
  for (const auto& t : inst.tasks) {
    ordered_json jt;
    jt["id"] = t.id;
    ordered_json cons = ordered_json::object();
    for (const auto& [dev, vec] : t.consumption)
      cons[inst.devices[dev].id] = keyed_json(vec, resource_ids);
    jt["consumption"] = cons;
    jt["context_req"] = keyed_json(t.context_req, inst.dims.context_dims);
    jt["inputs"] = ordered_json::array();
    for (const auto& in : t.inputs) {
      ordered_json jp;
      jp["id"] = in.id;
      jp["msg_type"] = inst.dims.message_types[in.msg_type];
      ordered_json req = ordered_json::object();
      for (const auto& [k, v] : in.requires_sem)
        if (!v.is_zero()) req[k] = rat_json(v);
      jp["requires"] = req;
      jt["inputs"].push_back(jp);
    }
    jt["outputs"] = ordered_json::array();
    for (const auto& out : t.outputs) {
      ordered_json jp;
      jp["id"] = out.id;
      jp["msg_type"] = inst.dims.message_types[out.msg_type];
      ordered_json prov = ordered_json::object();
      for (const auto& [k, v] : out.provides)
        if (!v.is_zero()) prov[k] = rat_json(v);
      jp["provides"] = prov;
      jp["nominal_rate"] = rat_json(out.nominal_rate);
      jt["outputs"].push_back(jp);
    }
    doc["tasks"].push_back(jt);
  }

  doc["modules"] = ordered_json::array();
  for (const auto& m : inst.modules) {
    ordered_json jm;
    jm["id"] = m.id;
    ordered_json devs = ordered_json::array(), tasks = ordered_json::array();
    for (int d : m.devices) devs.push_back(inst.devices[d].id);
    for (int t : m.tasks) tasks.push_back(inst.tasks[t].id);
    jm["devices"] = devs;
    jm["tasks"] = tasks;
    jm["capability"] = keyed_json(m.capability, inst.dims.function_dims);
    jm["overhead_cost"] = rat_json(m.overhead_cost);
    doc["modules"].push_back(jm);
  }

  ordered_json mi;
  mi["context"] = keyed_json(inst.mission.context, inst.dims.context_dims);
  mi["requirements"] = keyed_json(inst.mission.requirements, inst.dims.function_dims);
  ordered_json forb = ordered_json::array();
  for (const auto& [a, b] : inst.mission.cnx_forbidden)
    forb.push_back({inst.devices[a].id, inst.devices[b].id});
  mi["cnx_forbidden"] = forb;
  doc["mission"] = mi;

  doc["weights"] = {rat_json(inst.weights.module_cost), rat_json(inst.weights.exec),
                    rat_json(inst.weights.routing)};

  return doc.dump(2) + "\n";
}

std::string instance_digest(const ProblemInstance& inst) {
  return sha256_hex(serialize_instance(inst));
}

namespace {

void check_nonneg(const std::vector<Rat>& v, const std::string& element, const std::string& what,
                  std::vector<Violation>& out) {
  for (const auto& r : v)
    if (r.is_negative()) {
      out.push_back({"NEGATIVE_ENTRY", element, what + " has a negative entry"});
      return;
    }
}

}  // namespace

std::vector<Violation> validate_instance(const ProblemInstance& inst) {
  std::vector<Violation> out;
  const std::size_t W = inst.dims.resources.size();
  const std::size_t X = inst.dims.transports.size();
  const std::size_t J = inst.dims.context_dims.size();
  const std::size_t Q = inst.dims.function_dims.size();

  auto check_dupes = [&](const std::vector<std::string>& ids, const std::string& what) {
    std::set<std::string> seen;
    for (const auto& id : ids)
      if (!seen.insert(id).second)
        out.push_back({"DUPLICATE_ID", id, "duplicate " + what + " identifier"});
  };
  {
    std::vector<std::string> rid;
    for (const auto& r : inst.dims.resources) rid.push_back(r.id);
    check_dupes(rid, "resource");
    std::vector<std::string> xid;
    for (const auto& t : inst.dims.transports) xid.push_back(t.id);
    check_dupes(xid, "transport");
    check_dupes(inst.dims.context_dims, "context dimension");
    check_dupes(inst.dims.function_dims, "function dimension");
    check_dupes(inst.dims.message_types, "message type");
  }
  for (const auto& t : inst.dims.transports) {
    if (t.id == kLoopbackTransportId)
      out.push_back({"RESERVED_ID", t.id, "transport id 'loopback' is reserved"});
    if (t.overhead_factor < Rat(1))
      out.push_back({"OVERHEAD_BELOW_ONE", t.id, "transport overhead_factor must be >= 1"});
    if (t.bandwidth && t.bandwidth->is_negative())
      out.push_back({"NEGATIVE_ENTRY", t.id, "transport bandwidth must be >= 0"});
  }

  std::vector<std::string> dev_ids, task_ids, mod_ids;
  for (const auto& d : inst.devices) dev_ids.push_back(d.id);
  for (const auto& t : inst.tasks) task_ids.push_back(t.id);
  for (const auto& m : inst.modules) mod_ids.push_back(m.id);
  check_dupes(dev_ids, "device");
  check_dupes(task_ids, "task");
  check_dupes(mod_ids, "module");

  for (const auto& d : inst.devices) {
    if (d.resources.size() != W || d.cnx_capacity.size() != X || d.exposes.size() != X)
      out.push_back({"SHAPE_MISMATCH", d.id, "device vectors do not match declared dimensions"});
    check_nonneg(d.resources, d.id, "device resources", out);
    for (auto c : d.cnx_capacity)
      if (c < 0) {
        out.push_back({"NEGATIVE_ENTRY", d.id, "device cnx_capacity has a negative entry"});
        break;
      }
    for (const auto& ex : d.exposes)
      check_nonneg(ex, d.id, "device exposes", out);
    if (d.cost.is_negative()) out.push_back({"NEGATIVE_ENTRY", d.id, "device cost must be >= 0"});
  }

  for (const auto& t : inst.tasks) {
    for (const auto& [dev, vec] : t.consumption) {
      if (dev < 0 || dev >= (int)inst.devices.size()) {
        out.push_back({"UNKNOWN_REFERENCE", t.id, "consumption names a device out of range"});
        continue;
      }
      if (vec.size() != W)
        out.push_back({"SHAPE_MISMATCH", t.id, "consumption vector does not match resource count"});
      check_nonneg(vec, t.id, "task consumption", out);
    }
    if (t.context_req.size() != J)
      out.push_back({"SHAPE_MISMATCH", t.id, "context_req does not match context dimensions"});
    check_nonneg(t.context_req, t.id, "task context_req", out);
    std::set<std::string> port_ids;
    for (const auto& in : t.inputs) {
      if (!port_ids.insert(in.id).second)
        out.push_back({"DUPLICATE_ID", t.id + "." + in.id, "duplicate port identifier"});
      if (in.msg_type < 0 || in.msg_type >= (int)inst.dims.message_types.size())
        out.push_back({"UNKNOWN_MSG_TYPE", t.id + "." + in.id, "input names an undeclared message type"});
      for (const auto& [k, v] : in.requires_sem)
        if (v.is_negative())
          out.push_back({"NEGATIVE_ENTRY", t.id + "." + in.id, "requires." + k + " must be >= 0"});
    }
    for (const auto& o : t.outputs) {
      if (!port_ids.insert(o.id).second)
        out.push_back({"DUPLICATE_ID", t.id + "." + o.id, "duplicate port identifier"});
      if (o.msg_type < 0 || o.msg_type >= (int)inst.dims.message_types.size())
        out.push_back({"UNKNOWN_MSG_TYPE", t.id + "." + o.id, "output names an undeclared message type"});
      for (const auto& [k, v] : o.provides)
        if (v.is_negative())
          out.push_back({"NEGATIVE_ENTRY", t.id + "." + o.id, "provides." + k + " must be >= 0"});
      if (o.nominal_rate.is_negative())
        out.push_back({"NEGATIVE_ENTRY", t.id + "." + o.id, "nominal_rate must be >= 0"});
    }
  }

  // Module membership must partition devices and tasks: each element in
  // exactly one module.
  std::vector<int> dev_owner(inst.devices.size(), -1), task_owner(inst.tasks.size(), -1);
  for (int m = 0; m < (int)inst.modules.size(); ++m) {
    const auto& mod = inst.modules[m];
    if (mod.capability.size() != Q)
      out.push_back({"SHAPE_MISMATCH", mod.id, "capability does not match function dimensions"});
    check_nonneg(mod.capability, mod.id, "module capability", out);
    if (mod.overhead_cost.is_negative())
      out.push_back({"NEGATIVE_ENTRY", mod.id, "overhead_cost must be >= 0"});
    for (int d : mod.devices) {
      if (d < 0 || d >= (int)inst.devices.size()) {
        out.push_back({"UNKNOWN_REFERENCE", mod.id, "module names a device out of range"});
        continue;
      }
      if (dev_owner[d] >= 0)
        out.push_back({"MODULE_OVERLAP", inst.devices[d].id,
                       "device appears in modules '" + inst.modules[dev_owner[d]].id + "' and '" + mod.id + "'"});
      else
        dev_owner[d] = m;
    }
    for (int t : mod.tasks) {
      if (t < 0 || t >= (int)inst.tasks.size()) {
        out.push_back({"UNKNOWN_REFERENCE", mod.id, "module names a task out of range"});
        continue;
      }
      if (task_owner[t] >= 0)
        out.push_back({"MODULE_OVERLAP", inst.tasks[t].id,
                       "task appears in modules '" + inst.modules[task_owner[t]].id + "' and '" + mod.id + "'"});
      else
        task_owner[t] = m;
    }
  }
  for (std::size_t d = 0; d < inst.devices.size(); ++d)
    if (dev_owner[d] < 0)
      out.push_back({"UNPARTITIONED_ELEMENT", inst.devices[d].id, "device belongs to no module"});
  for (std::size_t t = 0; t < inst.tasks.size(); ++t)
    if (task_owner[t] < 0)
      out.push_back({"UNPARTITIONED_ELEMENT", inst.tasks[t].id, "task belongs to no module"});

  if (inst.mission.context.size() != J || inst.mission.requirements.size() != Q)
    out.push_back({"SHAPE_MISMATCH", "mission", "mission vectors do not match declared dimensions"});
  check_nonneg(inst.mission.context, "mission", "mission context", out);
  check_nonneg(inst.mission.requirements, "mission", "mission requirements", out);
  for (const auto& [a, b] : inst.mission.cnx_forbidden)
    if (a < 0 || b < 0 || a >= (int)inst.devices.size() || b >= (int)inst.devices.size())
      out.push_back({"UNKNOWN_REFERENCE", "mission", "cnx_forbidden names a device out of range"});

  if (inst.weights.module_cost.is_negative() || inst.weights.exec.is_negative() ||
      inst.weights.routing.is_negative())
    out.push_back({"NEGATIVE_ENTRY", "weights", "objective weights must be >= 0"});

  return out;
}

}  // namespace sysynth
