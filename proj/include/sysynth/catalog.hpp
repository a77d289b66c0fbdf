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

#ifndef SYSYNTH_CATALOG_HPP
#define SYSYNTH_CATALOG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sysynth/rational.hpp"

namespace sysynth {

// Errors raised while ingesting an instance document. Everything after a
// successful load is reported through Violation records instead.
struct InstanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : InstanceError {
  using InstanceError::InstanceError;
};
struct ReferenceError : InstanceError {
  using InstanceError::InstanceError;
};
struct ShapeError : InstanceError {
  using InstanceError::InstanceError;
};

// A physical transport class. `bandwidth` is nullopt for unbounded media.
// `overhead_factor` scales a link's nominal rate when routed over this
// transport. `physical` marks media that impose a physical tether, which is
// what connection prohibitions apply to.
struct TransportDef {
  std::string id;
  std::optional<Rat> bandwidth;
  Rat overhead_factor{1};
  bool physical = false;
};

// Index sets of the problem. Identifier order is document order and is the
// index order used everywhere downstream.
struct Dimensions {
  struct Resource {
    std::string id;
    std::string unit;
  };
  std::vector<Resource> resources;        // W
  std::vector<TransportDef> transports;   // X
  std::vector<std::string> context_dims;  // J
  std::vector<std::string> function_dims; // Q
  std::vector<std::string> message_types;

  int w() const { return (int)resources.size(); }
  int x() const { return (int)transports.size(); }
  int j() const { return (int)context_dims.size(); }
  int q() const { return (int)function_dims.size(); }
};

struct Device {
  std::string id;
  std::vector<Rat> resources;              // length W
  std::vector<std::int64_t> cnx_capacity;  // length X
  // exposes[x][w]: resources granted to the peer device of a connection on
  // transport x. Empty inner vectors mean "exposes nothing".
  std::vector<std::vector<Rat>> exposes;   // X x W
  Rat cost;
};

// Semantic port vectors are open keyed maps: a port constrains only the
// keys it names, absent keys are zero.
struct OutputPort {
  std::string id;
  int msg_type = -1;                  // index into Dimensions.message_types
  std::map<std::string, Rat> provides;
  Rat nominal_rate;
};

struct InputPort {
  std::string id;
  int msg_type = -1;
  std::map<std::string, Rat> requires_sem;
};

struct Task {
  std::string id;
  // Consumption per candidate host device; a missing key means the pair is
  // incompatible and no assignment variable is ever generated for it.
  std::map<int, std::vector<Rat>> consumption;  // device index -> length W
  std::vector<Rat> context_req;                 // length J
  std::vector<InputPort> inputs;
  std::vector<OutputPort> outputs;
};

struct Module {
  std::string id;
  std::vector<int> devices;      // device indices
  std::vector<int> tasks;        // task indices
  std::vector<Rat> capability;   // length Q
  Rat overhead_cost;

  int member_count() const { return (int)(devices.size() + tasks.size()); }
};

struct Mission {
  std::vector<Rat> context;       // length J
  std::vector<Rat> requirements;  // length Q
  // Unordered device pairs (by index, first < second) that may not be
  // joined by a physical transport.
  std::set<std::pair<int, int>> cnx_forbidden;
};

struct Weights {
  Rat module_cost{1};
  Rat exec{1};
  Rat routing{1};
};

struct ProblemInstance {
  Dimensions dims;
  std::vector<Device> devices;
  std::vector<Task> tasks;
  std::vector<Module> modules;
  Mission mission;
  Weights weights;

  int device_index(const std::string& id) const;
  int task_index(const std::string& id) const;
};

// Machine-readable invariant violation. `element` is the offending id
// where one exists.
struct Violation {
  std::string code;
  std::string element;
  std::string detail;
};

// Transport id reserved for the synthesized per-device loopback
// connections; instance documents may not declare it.
inline constexpr const char* kLoopbackTransportId = "loopback";

// Parses and fully resolves an instance document (JSON). Throws ParseError,
// ReferenceError or ShapeError. Element order equals document order.
ProblemInstance load_instance(const std::string& document);
ProblemInstance load_instance_file(const std::string& path);

// Canonical document for an in-memory instance; load_instance of the result
// reproduces the same instance. Also the digest preimage.
std::string serialize_instance(const ProblemInstance& inst);

// Hex SHA-256 of the canonical serialization.
std::string instance_digest(const ProblemInstance& inst);

// Static invariant checks. Returns an order-stable list, empty iff the
// instance is well formed. Pure.
std::vector<Violation> validate_instance(const ProblemInstance& inst);

}  // namespace sysynth

#endif  // SYSYNTH_CATALOG_HPP
