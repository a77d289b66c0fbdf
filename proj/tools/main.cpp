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

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sysynth/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"sysynth: component catalog to optimal system structure"};
  app.set_version_flag("--version", std::string(sysynth::kToolVersion));
  app.require_subcommand(1);

  sysynth::SynthOptions synth;
  auto* cmd_synth = app.add_subcommand("synth", "generate and solve the synthesis program");
  cmd_synth->add_option("instance", synth.instance_path, "instance document (JSON)")->required();
  cmd_synth->add_option("--flow-mode", synth.flow_mode, "flow encoding: directed|dummy")
      ->check(CLI::IsMember({"directed", "dummy"}));
  cmd_synth->add_option("--time-limit", synth.time_limit, "solver budget in seconds");
  cmd_synth->add_option("--export-lp", synth.export_lp_path, "write the program in LP format");
  cmd_synth->add_option("--export-mps", synth.export_mps_path, "write the program in MPS format");
  cmd_synth->add_flag("--no-solve", synth.no_solve, "generate/export only");
  cmd_synth->add_option("--dot-dir", synth.dot_dir, "write hardware/software DOT files here");
  cmd_synth->add_option("--weights", synth.weights, "objective weights w1,w2,w3");
  cmd_synth->add_option("--out-dir", synth.out_dir, "directory for solution/system artifacts");

  sysynth::ValidateOptions validate;
  auto* cmd_validate = app.add_subcommand("validate", "check a solution against an instance");
  cmd_validate->add_option("instance", validate.instance_path)->required();
  cmd_validate->add_option("solution", validate.solution_path)->required();

  sysynth::GenOptions gen;
  std::string shape, dims;
  double port_match = -1, compat = -1, tightness = -1;
  auto* cmd_gen = app.add_subcommand("gen", "generate a seeded random instance");
  cmd_gen->add_option("--seed", gen.spec.seed, "64-bit seed");
  cmd_gen->add_option("--shape", shape, "counts D,P,N");
  cmd_gen->add_option("--dims", dims, "dimension sizes W,X,J,Q");
  cmd_gen->add_option("--port-match", port_match, "input/output type match probability [0,1]");
  cmd_gen->add_option("--compat", compat, "device/task compatibility probability [0,1]");
  cmd_gen->add_option("--tightness", tightness, "requirement tightness [0,1]");
  cmd_gen->add_option("--max-outputs", gen.spec.max_outputs, "max outputs per task");
  cmd_gen->add_option("--max-inputs", gen.spec.max_inputs, "max inputs per task");
  cmd_gen->add_option("--spec", gen.spec_path, "generator spec file (JSON)");
  cmd_gen->add_option("-o,--out", gen.out_path, "output instance path ('-' for stdout)");

  sysynth::BenchOptions bench;
  auto* cmd_bench = app.add_subcommand("bench", "solve repeatedly and report timings");
  cmd_bench->add_option("target", bench.target, "instance file, directory, or generator spec")
      ->required();
  cmd_bench->add_option("--trials", bench.trials, "solves per instance");
  cmd_bench->add_option("-o,--out", bench.out_csv, "CSV output path ('-' for stdout)");
  cmd_bench->add_option("--jobs", bench.jobs, "parallel workers, one instance each");
  cmd_bench->add_option("--time-limit", bench.time_limit, "per-solve budget in seconds");
  cmd_bench->add_option("--flow-mode", bench.flow_mode, "flow encoding: directed|dummy")
      ->check(CLI::IsMember({"directed", "dummy"}));
  cmd_bench->add_option("--gen-count", bench.gen_count, "instances drawn from a generator spec");

  CLI11_PARSE(app, argc, argv);

  auto parse_triplet = [](const std::string& text, int* a, int* b, int* c, int* d) {
    int* slots[4] = {a, b, c, d};
    std::size_t start = 0, slot = 0;
    while (start <= text.size() && slots[slot]) {
      std::size_t comma = text.find(',', start);
      std::string field = text.substr(start, comma == std::string::npos ? comma : comma - start);
      *slots[slot] = std::stoi(field);
      ++slot;
      if (comma == std::string::npos || !slots[slot]) break;
      start = comma + 1;
    }
  };

  const char* det = std::getenv("SYNTH_DETERMINISTIC");
  if (det && std::string(det) == "0") synth.deterministic = false;

  if (app.got_subcommand(cmd_synth)) return sysynth::run_synth(synth, std::cout, std::cerr);
  if (app.got_subcommand(cmd_validate))
    return sysynth::run_validate(validate, std::cout, std::cerr);
  if (app.got_subcommand(cmd_gen)) {
    try {
      if (!shape.empty())
        parse_triplet(shape, &gen.spec.devices, &gen.spec.tasks, &gen.spec.modules, nullptr);
      if (!dims.empty())
        parse_triplet(dims, &gen.spec.resources, &gen.spec.transports, &gen.spec.context,
                      &gen.spec.functions);
    } catch (const std::exception&) {
      std::cerr << "error: --shape/--dims want comma-separated integers\n";
      return sysynth::kExitError;
    }
    auto to_bp = [](double p) { return (int)(p * 10000.0 + 0.5); };
    if (port_match >= 0) gen.spec.port_match_bp = to_bp(port_match);
    if (compat >= 0) gen.spec.compat_bp = to_bp(compat);
    if (tightness >= 0) gen.spec.tightness_bp = to_bp(tightness);
    return sysynth::run_gen(gen, std::cout, std::cerr);
  }
  if (app.got_subcommand(cmd_bench)) return sysynth::run_bench(bench, std::cout, std::cerr);
  return sysynth::kExitError;
}
