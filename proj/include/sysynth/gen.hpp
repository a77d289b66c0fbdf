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

#ifndef SYSYNTH_GEN_HPP
#define SYSYNTH_GEN_HPP

#include <cstdint>
#include <string>

#include "sysynth/catalog.hpp"

namespace sysynth {

// SplitMix64 with the standard constants. The generator's draw sequence is
// documented in the README so identical seeds reproduce identical instances
// in any implementation.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += UINT64_C(0x9E3779B97F4A7C15));
    z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
    return z ^ (z >> 31);
  }
  // Draws in [0, n) by modulo; documented, bias is irrelevant here.
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
  // Inclusive range.
  int range(int lo, int hi) { return lo + (int)below((std::uint64_t)(hi - lo + 1)); }
  // True with probability bp/10000.
  bool chance(int bp) { return (int)below(10000) < bp; }

 private:
  std::uint64_t state_;
};

struct GenSpec {
  std::uint64_t seed = 0;
  int devices = 0;  // D
  int tasks = 0;    // P
  int modules = 0;  // N
  int resources = 2;   // W
  int transports = 1;  // X
  int context = 1;     // J
  int functions = 1;   // Q
  int message_types = 0;  // 0: derived as max(1, ceil(P/2))
  int max_outputs = 1;
  int max_inputs = 1;
  // Probabilities in basis points (0..10000).
  int port_match_bp = 5000;  // input adopts the type of an existing output
  int compat_bp = 6000;      // a (device, task) pair is compatible
  int tightness_bp = 5000;   // mission requirement as a share of total capability
};

GenSpec genspec_from_json(const std::string& text);

// Deterministic per seed; the output always passes validate_instance.
// Feasibility is not guaranteed (full tightness may exceed what resource
// limits allow, by design).
ProblemInstance generate(const GenSpec& spec);

}  // namespace sysynth

#endif  // SYSYNTH_GEN_HPP
