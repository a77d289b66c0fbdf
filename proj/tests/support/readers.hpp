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

// Reference readers for the LP and MPS text forms, used to check that the
// exports re-import to the same constraint matrix. Deliberately independent
// of the exporter implementation.

#ifndef SYSYNTH_TESTS_READERS_HPP
#define SYSYNTH_TESTS_READERS_HPP

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sysynth::testing {

struct ParsedProgram {
  std::map<std::string, double> objective;                          // var -> coef
  std::map<std::string, std::map<std::string, double>> rows;        // row -> var -> coef
  std::map<std::string, char> relations;                            // row -> 'L','G','E'
  std::map<std::string, double> rhs;                                // row -> bound (0 default)
  std::vector<std::string> binaries;
};

inline ParsedProgram parse_lp(const std::string& text) {
  ParsedProgram out;
  std::istringstream in(text);
  std::string line;
  enum { kNone, kObjective, kRows, kBinaries } section = kNone;
  std::string pending;  // logical line accumulator (wrapped rows)

  auto flush = [&](const std::string& logical) {
    if (logical.empty()) return;
    std::string body = logical;
    std::string name;
    auto colon = body.find(':');
    if (colon != std::string::npos) {
      name = body.substr(0, colon);
      while (!name.empty() && name.front() == ' ') name.erase(name.begin());
      body = body.substr(colon + 1);
    }
    char rel = 0;
    double bound = 0;
    for (const char* tok : {"<=", ">=", "="}) {
      auto pos = body.find(tok);
      if (pos != std::string::npos) {
        rel = tok[0] == '<' ? 'L' : tok[0] == '>' ? 'G' : 'E';
        bound = std::stod(body.substr(pos + std::string(tok).size()));
        body = body.substr(0, pos);
        break;
      }
    }
    std::map<std::string, double> terms;
    std::istringstream ts(body);
    std::string tok;
    double sign = 1, coef = 1;
    bool have_coef = false;
    while (ts >> tok) {
      if (tok == "+") {
        sign = 1;
        continue;
      }
      if (tok == "-") {
        sign = -1;
        continue;
      }
      char* endp = nullptr;
      double v = std::strtod(tok.c_str(), &endp);
      if (endp && *endp == '\0') {
        coef = v;
        have_coef = true;
        continue;
      }
      terms[tok] += sign * (have_coef ? coef : 1.0);
      sign = 1;
      coef = 1;
      have_coef = false;
    }
    if (section == kObjective) {
      out.objective = terms;
    } else {
      out.rows[name] = terms;
      out.relations[name] = rel;
      out.rhs[name] = bound;
    }
  };

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '\\') continue;
    std::string low = line;
    for (auto& c : low) c = (char)std::tolower((unsigned char)c);
    if (low.rfind("minimize", 0) == 0) {
      section = kObjective;
      pending.clear();
      continue;
    }
    if (low.rfind("subject to", 0) == 0) {
      flush(pending);
      pending.clear();
      section = kRows;
      continue;
    }
    if (low.rfind("binaries", 0) == 0 || low.rfind("binary", 0) == 0) {
      flush(pending);
      pending.clear();
      section = kBinaries;
      continue;
    }
    if (low.rfind("bounds", 0) == 0 || low.rfind("end", 0) == 0) {
      flush(pending);
      pending.clear();
      section = kNone;
      continue;
    }
    if (section == kBinaries) {
      std::istringstream bs(line);
      std::string v;
      while (bs >> v) out.binaries.push_back(v);
      continue;
    }
    if (section == kObjective || section == kRows) {
      bool starts_new = line.find(':') != std::string::npos;
      if (starts_new) {
        flush(pending);
        pending = line;
      } else {
        pending += " " + line;
      }
      // A row is complete once a relation appears; the objective flushes on
      // the next section marker.
      if (section == kRows && (line.find("<=") != std::string::npos ||
                               line.find(">=") != std::string::npos ||
                               line.find(" = ") != std::string::npos)) {
        flush(pending);
        pending.clear();
      }
    }
  }
  flush(pending);
  return out;
}

inline ParsedProgram parse_mps(const std::string& text) {
  ParsedProgram out;
  std::istringstream in(text);
  std::string line;
  enum { kNone, kRows, kColumns, kRhs, kBounds } section = kNone;
  std::string obj_row = "obj";
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '*') continue;
    if (line[0] != ' ') {
      std::istringstream hs(line);
      std::string head;
      hs >> head;
      if (head == "ROWS") section = kRows;
      else if (head == "COLUMNS") section = kColumns;
      else if (head == "RHS") section = kRhs;
      else if (head == "BOUNDS") section = kBounds;
      else section = kNone;
      continue;
    }
    std::istringstream fs(line);
    std::vector<std::string> f;
    std::string tok;
    while (fs >> tok) f.push_back(tok);
    if (f.empty()) continue;
    switch (section) {
      case kRows:
        if (f.size() >= 2) {
          if (f[0] == "N") obj_row = f[1];
          else {
            out.relations[f[1]] = f[0][0];
            out.rows[f[1]];
          }
        }
        break;
      case kColumns: {
        if (f.size() >= 2 && f[1] == "'MARKER'") break;
        const std::string& var = f[0];
        for (std::size_t i = 1; i + 1 < f.size(); i += 2) {
          double coef = std::stod(f[i + 1]);
          if (f[i] == obj_row) {
            if (coef != 0.0) out.objective[var] += coef;
          } else {
            out.rows[f[i]][var] += coef;
          }
        }
        break;
      }
      case kRhs:
        for (std::size_t i = 1; i + 1 < f.size(); i += 2) out.rhs[f[i]] = std::stod(f[i + 1]);
        break;
      case kBounds:
        if (f.size() >= 3 && f[0] == "BV") out.binaries.push_back(f[2]);
        break;
      default:
        break;
    }
  }
  return out;
}

}  // namespace sysynth::testing

#endif  // SYSYNTH_TESTS_READERS_HPP
