// Copyright 2026 The Coflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coflow/mps.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace coflow {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

char row_type(Relation r) {
  switch (r) {
    case Relation::kLessEqual: return 'L';
    case Relation::kEqual: return 'E';
    case Relation::kGreaterEqual: return 'G';
  }
  return 'E';
}

}  // namespace

void write_mps(std::ostream& out, const LPProblem& p) {
  out << "NAME          " << p.name << "\n";
  out << "ROWS\n";
  out << " N  OBJ\n";
  for (int i = 0; i < p.row_count(); ++i) {
    out << " " << row_type(p.relations[i]) << "  " << p.row_names[i] << "\n";
  }
  out << "COLUMNS\n";
  for (int j = 0; j < p.column_count(); ++j) {
    const std::string& name = p.column_names[j];
    bool any = false;
    if (p.objective[j] != 0.0) {
      out << "    " << name << "  OBJ  " << num(p.objective[j]) << "\n";
      any = true;
    }
    for (Eigen::SparseMatrix<double>::InnerIterator it(p.matrix, j); it; ++it) {
      out << "    " << name << "  " << p.row_names[it.row()] << "  " << num(it.value()) << "\n";
      any = true;
    }
    if (!any) out << "    " << name << "  OBJ  0\n";
  }
  out << "RHS\n";
  for (int i = 0; i < p.row_count(); ++i) {
    if (p.rhs[i] != 0.0) out << "    RHS  " << p.row_names[i] << "  " << num(p.rhs[i]) << "\n";
  }
  out << "BOUNDS\n";
  for (int j = 0; j < p.column_count(); ++j) {
    const std::string& name = p.column_names[j];
    const double lo = p.lower[j];
    const double up = p.upper[j];
    if (lo == up) {
      out << " FX BND  " << name << "  " << num(lo) << "\n";
      continue;
    }
    if (std::isinf(lo) && std::isinf(up)) {
      out << " FR BND  " << name << "\n";
      continue;
    }
    if (std::isinf(lo)) out << " MI BND  " << name << "\n";
    else if (lo != 0.0) out << " LO BND  " << name << "  " << num(lo) << "\n";
    if (std::isfinite(up)) out << " UP BND  " << name << "  " << num(up) << "\n";
  }
  out << "ENDATA\n";
}

std::string to_mps(const LPProblem& problem) {
  std::ostringstream os;
  write_mps(os, problem);
  return os.str();
}

LPProblem read_mps(std::istream& in) {
  enum class Section { kNone, kRows, kColumns, kRhs, kBounds, kEnd };
  Section section = Section::kNone;
  std::string objective_row;
  std::string name = "COFLOW";
  std::vector<std::string> rows;
  std::vector<Relation> relations;
  std::unordered_map<std::string, int> row_index;
  std::vector<std::string> cols;
  std::unordered_map<std::string, int> col_index;
  std::vector<double> cost, lower, upper, rhs;
  std::vector<Eigen::Triplet<double>> entries;

  auto column = [&](const std::string& c) {
    auto it = col_index.find(c);
    if (it != col_index.end()) return it->second;
    const int j = static_cast<int>(cols.size());
    col_index.emplace(c, j);
    cols.push_back(c);
    cost.push_back(0.0);
    lower.push_back(0.0);
    upper.push_back(kInfinity);
    return j;
  };
  auto parse_value = [](const std::string& s) {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::runtime_error("bad number '" + s + "'");
    return v;
  };

  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '*') continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (line[0] != ' ' && line[0] != '\t') {
      const std::string& head = tok[0];
      if (head == "NAME") {
        if (tok.size() > 1) name = tok[1];
      } else if (head == "ROWS") {
        section = Section::kRows;
      } else if (head == "COLUMNS") {
        section = Section::kColumns;
      } else if (head == "RHS") {
        section = Section::kRhs;
      } else if (head == "BOUNDS") {
        section = Section::kBounds;
      } else if (head == "ENDATA") {
        section = Section::kEnd;
      } else {
        throw std::runtime_error("unsupported MPS section " + head);
      }
      continue;
    }
    switch (section) {
      case Section::kRows: {
        if (tok.size() != 2) throw std::runtime_error("bad ROWS line: " + line);
        const std::string& type = tok[0];
        if (type == "N") {
          if (objective_row.empty()) objective_row = tok[1];
          break;
        }
        Relation r;
        if (type == "L") r = Relation::kLessEqual;
        else if (type == "G") r = Relation::kGreaterEqual;
        else if (type == "E") r = Relation::kEqual;
        else throw std::runtime_error("bad row type " + type);
        row_index.emplace(tok[1], static_cast<int>(rows.size()));
        rows.push_back(tok[1]);
        relations.push_back(r);
        rhs.push_back(0.0);
        break;
      }
      case Section::kColumns: {
        if (tok.size() != 3 && tok.size() != 5) {
          throw std::runtime_error("bad COLUMNS line: " + line);
        }
        const int j = column(tok[0]);
        for (size_t f = 1; f + 1 < tok.size(); f += 2) {
          const double v = parse_value(tok[f + 1]);
          if (tok[f] == objective_row) {
            cost[j] += v;
            continue;
          }
          auto it = row_index.find(tok[f]);
          if (it == row_index.end()) throw std::runtime_error("unknown row " + tok[f]);
          entries.emplace_back(it->second, j, v);
        }
        break;
      }
      case Section::kRhs: {
        // Optional set name: an odd token count carries one.
        const size_t start = tok.size() % 2 == 1 ? 1 : 0;
        for (size_t f = start; f + 1 < tok.size(); f += 2) {
          if (tok[f] == objective_row) continue;
          auto it = row_index.find(tok[f]);
          if (it == row_index.end()) throw std::runtime_error("unknown row " + tok[f]);
          rhs[it->second] = parse_value(tok[f + 1]);
        }
        break;
      }
      case Section::kBounds: {
        if (tok.size() < 3) throw std::runtime_error("bad BOUNDS line: " + line);
        const std::string& type = tok[0];
        auto it = col_index.find(tok[2]);
        if (it == col_index.end()) throw std::runtime_error("unknown column " + tok[2]);
        const int j = it->second;
        const bool needs_value = type == "UP" || type == "LO" || type == "FX";
        if (needs_value && tok.size() < 4) throw std::runtime_error("bound lacks value");
        if (type == "UP") upper[j] = parse_value(tok[3]);
        else if (type == "LO") lower[j] = parse_value(tok[3]);
        else if (type == "FX") lower[j] = upper[j] = parse_value(tok[3]);
        else if (type == "MI") lower[j] = -kInfinity;
        else if (type == "PL") upper[j] = kInfinity;
        else if (type == "FR") { lower[j] = -kInfinity; upper[j] = kInfinity; }
        else throw std::runtime_error("unsupported bound type " + type);
        break;
      }
      default:
        throw std::runtime_error("data outside a section: " + line);
    }
  }
  if (section != Section::kEnd) throw std::runtime_error("missing ENDATA");

  LPProblem p;
  p.name = name;
  const int n = static_cast<int>(cols.size());
  const int m = static_cast<int>(rows.size());
  p.column_names = cols;
  p.column_index = col_index;
  p.objective = Eigen::Map<Eigen::VectorXd>(cost.data(), n);
  p.lower = Eigen::Map<Eigen::VectorXd>(lower.data(), n);
  p.upper = Eigen::Map<Eigen::VectorXd>(upper.data(), n);
  p.row_names = rows;
  p.relations = relations;
  p.rhs = Eigen::Map<Eigen::VectorXd>(rhs.data(), m);
  p.matrix.resize(m, n);
  p.matrix.setFromTriplets(entries.begin(), entries.end());
  p.matrix.makeCompressed();
  return p;
}

LPProblem parse_mps(const std::string& text) {
  std::istringstream is(text);
  return read_mps(is);
}

}  // namespace coflow
