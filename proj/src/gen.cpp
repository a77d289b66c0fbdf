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

#include "sysynth/gen.hpp"

#include <stdexcept>

#include <json.hpp>

namespace sysynth {

GenSpec genspec_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("generator spec: ") + e.what());
  }
  GenSpec spec;
  spec.seed = doc.value("seed", (std::uint64_t)0);
  spec.devices = doc.value("D", 0);
  spec.tasks = doc.value("P", 0);
  spec.modules = doc.value("N", 0);
  spec.resources = doc.value("W", 2);
  spec.transports = doc.value("X", 1);
  spec.context = doc.value("J", 1);
  spec.functions = doc.value("Q", 1);
  spec.message_types = doc.value("message_types", 0);
  spec.max_outputs = doc.value("max_outputs", 1);
  spec.max_inputs = doc.value("max_inputs", 1);
  auto bp = [&](const char* key, int dflt) {
    if (!doc.contains(key)) return dflt;
    double p = doc[key].get<double>();
    if (p < 0.0 || p > 1.0) throw ParseError(std::string("generator spec: ") + key + " not in [0,1]");
    return (int)(p * 10000.0 + 0.5);
  };
  spec.port_match_bp = bp("port_match", 5000);
  spec.compat_bp = bp("compat", 6000);
  spec.tightness_bp = bp("tightness", 5000);
  return spec;
}

ProblemInstance generate(const GenSpec& spec) {
  if (spec.devices < 0 || spec.tasks < 0 || spec.modules < 0)
    throw std::invalid_argument("generator: counts must be >= 0");
  if (spec.modules == 0 && (spec.devices > 0 || spec.tasks > 0))
    throw std::invalid_argument("generator: elements need at least one module to belong to");

  SplitMix64 rng(spec.seed);
  ProblemInstance inst;
  const int W = spec.resources, X = spec.transports, J = spec.context, Q = spec.functions;
  const int D = spec.devices, P = spec.tasks, N = spec.modules;
  const int M = spec.message_types > 0 ? spec.message_types : std::max(1, (P + 1) / 2);

  // 1. Dimensions.
  for (int w = 0; w < W; ++w)
    inst.dims.resources.push_back({"r" + std::to_string(w), "unit"});
  for (int x = 0; x < X; ++x) {
    TransportDef t;
    t.id = "x" + std::to_string(x);
    if (rng.chance(2500))
      t.bandwidth = std::nullopt;
    else
      t.bandwidth = Rat(10 * rng.range(5, 50));
    t.overhead_factor = Rat(1) + Rat(rng.range(0, 5), 10);
    t.physical = (x % 2) == 0;
    inst.dims.transports.push_back(t);
  }
  for (int j = 0; j < J; ++j) inst.dims.context_dims.push_back("c" + std::to_string(j));
  for (int q = 0; q < Q; ++q) inst.dims.function_dims.push_back("f" + std::to_string(q));
  for (int m = 0; m < M; ++m) inst.dims.message_types.push_back("m" + std::to_string(m));

  // 2. Module ownership first, so the partition holds by construction.
  std::vector<int> dev_owner(D), task_owner(P);
  for (int d = 0; d < D; ++d) dev_owner[d] = (int)rng.below(N);
  for (int p = 0; p < P; ++p) task_owner[p] = (int)rng.below(N);

  // 3. Devices.
  for (int d = 0; d < D; ++d) {
    Device dev;
    dev.id = "d" + std::to_string(d);
    for (int w = 0; w < W; ++w) dev.resources.push_back(Rat(1 << rng.range(1, 4)));
    for (int x = 0; x < X; ++x) dev.cnx_capacity.push_back(rng.range(0, 3));
    dev.exposes.assign(X, {});
    for (int x = 0; x < X; ++x)
      if (W > 0 && rng.chance(1500)) {
        std::vector<Rat> ex(W, Rat(0));
        ex[(int)rng.below(W)] = Rat(rng.range(1, 2));
        dev.exposes[x] = ex;
      }
    dev.cost = Rat(10 * rng.range(1, 60));
    inst.devices.push_back(std::move(dev));
  }

  // 4. Tasks: shells with outputs first, then inputs that can match types
  // already produced, then consumption and context.
  for (int p = 0; p < P; ++p) {
    Task t;
    t.id = "t" + std::to_string(p);
    int outs = (int)rng.below((std::uint64_t)spec.max_outputs + 1);
    for (int o = 0; o < outs; ++o) {
      OutputPort port;
      port.id = "o" + std::to_string(o);
      port.msg_type = (int)rng.below(M);
      port.nominal_rate = Rat(rng.range(1, 8));
      if (rng.chance(5000)) port.provides["sem_m" + std::to_string(port.msg_type)] = Rat(1);
      t.outputs.push_back(std::move(port));
    }
    inst.tasks.push_back(std::move(t));
  }
  std::vector<std::pair<int, int>> all_outputs;  // (task, output)
  for (int p = 0; p < P; ++p)
    for (int o = 0; o < (int)inst.tasks[p].outputs.size(); ++o) all_outputs.emplace_back(p, o);
  for (int p = 0; p < P; ++p) {
    Task& t = inst.tasks[p];
    int ins = (int)rng.below((std::uint64_t)spec.max_inputs + 1);
    for (int i = 0; i < ins; ++i) {
      InputPort port;
      port.id = "i" + std::to_string(i);
      bool matched = !all_outputs.empty() && rng.chance(spec.port_match_bp);
      if (matched) {
        auto [op, oo] = all_outputs[(std::size_t)rng.below(all_outputs.size())];
        port.msg_type = inst.tasks[op].outputs[oo].msg_type;
      } else {
        port.msg_type = (int)rng.below(M);
      }
      if (rng.chance(3000)) port.requires_sem["sem_m" + std::to_string(port.msg_type)] = Rat(1);
      t.inputs.push_back(std::move(port));
    }
    for (int d = 0; d < D; ++d) {
      if (!rng.chance(spec.compat_bp)) continue;
      std::vector<Rat> c(W, Rat(0));
      for (int w = 0; w < W; ++w)
        if (rng.chance(6000)) c[w] = Rat(rng.range(1, 3));
      t.consumption[d] = std::move(c);
    }
    for (int j = 0; j < J; ++j)
      t.context_req.push_back(rng.chance(3000) ? Rat(1) : Rat(0));
  }

  // 5. Modules with capabilities.
  std::vector<std::vector<Rat>> caps(N, std::vector<Rat>((std::size_t)Q, Rat(0)));
  for (int m = 0; m < N; ++m) {
    Module mod;
    mod.id = "mod" + std::to_string(m);
    for (int d = 0; d < D; ++d)
      if (dev_owner[d] == m) mod.devices.push_back(d);
    for (int p = 0; p < P; ++p)
      if (task_owner[p] == m) mod.tasks.push_back(p);
    for (int q = 0; q < Q; ++q)
      if (rng.chance(4000)) caps[m][q] = Rat(rng.range(1, 3));
    mod.capability = caps[m];
    mod.overhead_cost = Rat(5 * rng.range(0, 10));
    inst.modules.push_back(std::move(mod));
  }

  // 6. Mission: context cover, then requirements as a tightness share of
  // the total capability per function dimension.
  for (int j = 0; j < J; ++j)
    inst.mission.context.push_back(rng.chance(6000) ? Rat(1) : Rat(0));
  for (int q = 0; q < Q; ++q) {
    std::int64_t total = 0;
    for (int m = 0; m < N; ++m) total += caps[m][q].num();
    inst.mission.requirements.push_back(Rat(total * spec.tightness_bp / 10000));
  }

  // 7. One forbidden physical pair, occasionally.
  if (D >= 2 && rng.chance(1000)) {
    int a = (int)rng.below(D);
    int b = (int)rng.below(D);
    if (a != b) inst.mission.cnx_forbidden.emplace(std::min(a, b), std::max(a, b));
  }

  return inst;
}

}  // namespace sysynth
