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

#include "sysynth/cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "sysynth/report.hpp"

namespace sysynth {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

std::string stem_of(const std::string& path) {
  return fs::path(path).stem().string();
}

Weights parse_weights(const std::string& text) {
  std::vector<Rat> parts;
  std::string field;
  std::istringstream in(text);
  while (std::getline(in, field, ',')) parts.push_back(Rat::from_decimal(field));
  if (parts.size() != 3) throw ParseError("weights: expected w1,w2,w3");
  return Weights{parts[0], parts[1], parts[2]};
}

FlowMode parse_flow_mode(const std::string& text) {
  if (text == "directed") return FlowMode::kDirected;
  if (text == "dummy") return FlowMode::kDummy;
  throw ParseError("flow mode must be 'directed' or 'dummy'");
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

struct LoadedInstance {
  ProblemInstance inst;
  std::vector<CandidateConnection> conns;
  std::vector<CandidateLink> links;
  std::string digest;
};

LoadedInstance load_and_expand(const std::string& path, std::ostream& err) {
  LoadedInstance li;
  li.inst = load_instance(read_file(path));
  auto violations = validate_instance(li.inst);
  if (!violations.empty()) {
    for (const auto& v : violations)
      err << "invalid instance: " << v.code << " " << v.element << ": " << v.detail << "\n";
    throw ParseError("instance '" + path + "' failed validation");
  }
  li.conns = expand_connections(li.inst);
  li.links = expand_links(li.inst);
  li.digest = instance_digest(li.inst);
  return li;
}

}  // namespace

int run_synth(const SynthOptions& opt, std::ostream& out, std::ostream& err) {
  LoadedInstance li;
  BuildOptions build;
  try {
    li = load_and_expand(opt.instance_path, err);
    build.flow_mode = parse_flow_mode(opt.flow_mode);
    if (!opt.weights.empty()) build.weight_override = parse_weights(opt.weights);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    Program program = build_program(li.inst, li.conns, li.links, build);
    if (!opt.export_lp_path.empty()) write_file(opt.export_lp_path, export_lp(program));
    if (!opt.export_mps_path.empty()) write_file(opt.export_mps_path, export_mps(program));
    if (opt.no_solve) {
      out << "program generated: " << program.var_count() << " variables, "
          << program.constraints.size() << " constraints (not solved)\n";
      return kExitOk;
    }

    SolverConfig config;
    config.time_limit_seconds = opt.time_limit;
    config.deterministic = opt.deterministic;
    Solution solution = solve(program, config);

    const std::string stem = stem_of(opt.instance_path);
    fs::create_directories(opt.out_dir);
    write_file((fs::path(opt.out_dir) / (stem + ".solution.json")).string(),
               solution_to_json(li.inst, li.conns, li.links, program, solution, li.digest));

    if (!solution.values.empty()) {
      SynthesizedSystem sys = extract_system(li.inst, li.conns, li.links, program.space,
                                             solution.values);
      write_file((fs::path(opt.out_dir) / (stem + ".system.json")).string(),
                 system_to_json(li.inst, li.conns, li.links, sys, li.digest));
      if (!opt.dot_dir.empty()) {
        fs::create_directories(opt.dot_dir);
        write_file((fs::path(opt.dot_dir) / (stem + ".hardware.dot")).string(),
                   hardware_dot(li.inst, li.conns, sys));
        write_file((fs::path(opt.dot_dir) / (stem + ".software.dot")).string(),
                   software_dot(li.inst, li.links, sys));
      }
    }

    out << "status: " << to_string(solution.status) << "\n";
    switch (solution.status) {
      case SolveStatus::kOptimal:
        out << "objective: " << solution.objective.to_string() << "\n";
        return kExitOk;
      case SolveStatus::kInfeasible: {
        // Name the requirement dimensions that no module mix could ever
        // reach; anything else failed through interaction.
        bool named = false;
        for (int q = 0; q < li.inst.dims.q(); ++q) {
          Rat total;
          for (const auto& mod : li.inst.modules) total += mod.capability[q];
          if (total < li.inst.mission.requirements[q]) {
            out << "unmet requirement: " << li.inst.dims.function_dims[q] << " (total capability "
                << total.to_string() << " < required "
                << li.inst.mission.requirements[q].to_string() << ")\n";
            named = true;
          }
        }
        if (!named) out << "infeasible: requirements interact with resource or context limits\n";
        return kExitInfeasible;
      }
      case SolveStatus::kTimeoutIncumbent:
        out << "incumbent: " << solution.objective.to_string()
            << " lower_bound: " << solution.lower_bound.to_string() << "\n";
        return kExitTimeout;
      case SolveStatus::kTimeoutNone:
        out << "lower_bound: " << solution.lower_bound.to_string() << "\n";
        return kExitTimeout;
    }
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int run_validate(const ValidateOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    LoadedInstance li = load_and_expand(opt.instance_path, err);
    VarSpace space = make_var_space(li.inst, li.conns, li.links, FlowMode::kDirected);
    ParsedSolution parsed =
        solution_from_json(li.inst, li.conns, li.links, space, read_file(opt.solution_path));
    if (!parsed.digest.empty() && parsed.digest != li.digest)
      err << "warning: solution digest " << parsed.digest.substr(0, 12)
          << "... does not match instance digest " << li.digest.substr(0, 12)
          << "...; checking anyway\n";
    CheckReport report = check_solution(li.inst, li.conns, li.links, space, parsed.values);
    out << check_report_to_json(report);
    return report.ok ? kExitOk : kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int run_gen(const GenOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    GenSpec spec = opt.spec;
    if (!opt.spec_path.empty()) spec = genspec_from_json(read_file(opt.spec_path));
    ProblemInstance inst = generate(spec);
    std::string doc = serialize_instance(inst);
    if (opt.out_path.empty() || opt.out_path == "-")
      out << doc;
    else
      write_file(opt.out_path, doc);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int run_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  struct Item {
    std::string name;
    std::string document;
  };
  std::vector<Item> items;
  try {
    if (fs::is_directory(opt.target)) {
      std::vector<std::string> paths;
      for (const auto& entry : fs::directory_iterator(opt.target))
        if (entry.path().extension() == ".json") paths.push_back(entry.path().string());
      std::sort(paths.begin(), paths.end());
      for (const auto& p : paths) items.push_back({stem_of(p), read_file(p)});
    } else {
      std::string text = read_file(opt.target);
      if (text.find("\"dims\"") != std::string::npos) {
        items.push_back({stem_of(opt.target), text});
      } else {
        GenSpec base = genspec_from_json(text);
        for (int i = 0; i < opt.gen_count; ++i) {
          GenSpec spec = base;
          spec.seed = base.seed + (std::uint64_t)i;
          items.push_back({"seed" + std::to_string(spec.seed), serialize_instance(generate(spec))});
        }
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  if (items.empty()) {
    err << "error: no instances found in '" << opt.target << "'\n";
    return kExitError;
  }

  struct Record {
    std::string instance, digest, config, status, objective;
    double wall = 0.0;
    std::int64_t nodes = 0;
    bool failed = false;
    std::string failure;
  };
  std::vector<std::vector<Record>> results(items.size());

  FlowMode mode;
  try {
    mode = parse_flow_mode(opt.flow_mode);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  auto run_item = [&](std::size_t idx) {
    const Item& item = items[idx];
    auto& records = results[idx];
    try {
      ProblemInstance inst = load_instance(item.document);
      auto conns = expand_connections(inst);
      auto links = expand_links(inst);
      std::string digest = instance_digest(inst);
      BuildOptions build;
      build.flow_mode = mode;
      Program program = build_program(inst, conns, links, build);
      std::string config_desc = opt.flow_mode + ";tl=" + std::to_string((long long)opt.time_limit) + "s";
      for (int trial = 0; trial < opt.trials; ++trial) {
        SolverConfig config;
        config.time_limit_seconds = opt.time_limit;
        Solution sol = solve(program, config);
        Record r;
        r.instance = item.name;
        r.digest = digest;
        r.config = config_desc;
        r.status = to_string(sol.status);
        r.objective = sol.values.empty() ? "" : sol.objective.to_string();
        r.wall = sol.stats.wall_seconds;
        r.nodes = sol.stats.nodes;
        records.push_back(std::move(r));
      }
    } catch (const std::exception& e) {
      Record r;
      r.instance = item.name;
      r.failed = true;
      r.failure = e.what();
      records.push_back(std::move(r));
    }
  };

  if (opt.jobs <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) run_item(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    int workers = std::min<std::size_t>((std::size_t)opt.jobs, items.size());
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < items.size(); i = next.fetch_add(1))
          run_item(i);
      });
    for (auto& t : pool) t.join();
  }

  std::ostringstream csv;
  csv << "instance,digest,config,trial,status,objective,wall_seconds,nodes,tool_version\n";
  for (const auto& records : results) {
    double wall_sum = 0.0;
    int ok = 0;
    for (std::size_t t = 0; t < records.size(); ++t) {
      const Record& r = records[t];
      if (r.failed) {
        csv << csv_quote(r.instance) << ",,,,ERROR," << csv_quote(r.failure) << ",,,"
            << kToolVersion << "\n";
        continue;
      }
      csv << csv_quote(r.instance) << "," << r.digest << "," << csv_quote(r.config) << "," << t
          << "," << r.status << "," << r.objective << "," << r.wall << "," << r.nodes << ","
          << kToolVersion << "\n";
      wall_sum += r.wall;
      ++ok;
    }
    if (ok > 0) {
      csv << csv_quote(records[0].instance) << "," << records[0].digest << ","
          << csv_quote(records[0].config) << ",mean," << records[0].status << ","
          << records[0].objective << "," << (wall_sum / ok) << ",," << kToolVersion << "\n";
    }
  }
  if (opt.out_csv.empty() || opt.out_csv == "-")
    out << csv.str();
  else {
    try {
      write_file(opt.out_csv, csv.str());
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitError;
    }
  }
  return kExitOk;
}

}  // namespace sysynth
