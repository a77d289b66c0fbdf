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

#ifndef SYSYNTH_CLI_HPP
#define SYSYNTH_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "sysynth/gen.hpp"

namespace sysynth {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes shared by the subcommands: 0 success/optimal, 1 usage or I/O
// or instance errors, 2 infeasible (synth) / failed validation (validate),
// 3 solver budget exhausted.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitTimeout = 3;

struct SynthOptions {
  std::string instance_path;
  std::string flow_mode = "directed";  // or "dummy"
  double time_limit = 300.0;
  std::string export_lp_path;
  std::string export_mps_path;
  bool no_solve = false;
  std::string dot_dir;
  std::string weights;  // "w1,w2,w3", overrides the instance weights
  std::string out_dir = ".";
  bool deterministic = true;  // SYNTH_DETERMINISTIC=0 turns this off
};
int run_synth(const SynthOptions& opt, std::ostream& out, std::ostream& err);

struct ValidateOptions {
  std::string instance_path;
  std::string solution_path;
};
int run_validate(const ValidateOptions& opt, std::ostream& out, std::ostream& err);

struct GenOptions {
  GenSpec spec;
  std::string spec_path;  // optional JSON spec; flags below override it
  std::string out_path;
};
int run_gen(const GenOptions& opt, std::ostream& out, std::ostream& err);

struct BenchOptions {
  std::string target;  // instance file, directory of instances, or generator spec
  int trials = 3;
  std::string out_csv;
  int jobs = 1;
  double time_limit = 300.0;
  std::string flow_mode = "directed";
  int gen_count = 10;  // instances to draw when target is a generator spec
};
int run_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace sysynth

#endif  // SYSYNTH_CLI_HPP
