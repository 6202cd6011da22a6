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

#include "coflow/lp_problem.hpp"

#include <algorithm>
#include <stdexcept>

namespace coflow {

std::optional<int> LPProblem::column(const std::string& name) const {
  auto it = column_index.find(name);
  if (it == column_index.end()) return std::nullopt;
  return it->second;
}

int LPBuilder::add_column(std::string name, double cost, double lower, double upper) {
  const int index = column_count();
  if (!problem_.column_index.emplace(name, index).second) {
    throw std::invalid_argument("duplicate column " + name);
  }
  problem_.column_names.push_back(std::move(name));
  objective_.push_back(cost);
  lower_.push_back(lower);
  upper_.push_back(upper);
  return index;
}

void LPBuilder::add_row(std::string name,
                        const std::vector<std::pair<int, double>>& terms,
                        Relation relation, double rhs) {
  const int row = static_cast<int>(problem_.row_names.size());
  for (const auto& [col, coef] : terms) {
    if (col < 0 || col >= column_count()) {
      throw std::invalid_argument("row " + name + " references a missing column");
    }
    if (coef != 0.0) entries_.emplace_back(row, col, coef);
  }
  problem_.row_names.push_back(std::move(name));
  problem_.relations.push_back(relation);
  rhs_.push_back(rhs);
}

LPProblem LPBuilder::build() && {
  const int n = column_count();
  const int m = static_cast<int>(problem_.row_names.size());
  problem_.objective = Eigen::Map<Eigen::VectorXd>(objective_.data(), n);
  problem_.lower = Eigen::Map<Eigen::VectorXd>(lower_.data(), n);
  problem_.upper = Eigen::Map<Eigen::VectorXd>(upper_.data(), n);
  problem_.rhs = Eigen::Map<Eigen::VectorXd>(rhs_.data(), m);
  problem_.matrix.resize(m, n);
  problem_.matrix.setFromTriplets(entries_.begin(), entries_.end());
  problem_.matrix.makeCompressed();
  return std::move(problem_);
}

double max_violation(const LPProblem& problem, const Eigen::VectorXd& x) {
  double worst = 0.0;
  for (int j = 0; j < problem.column_count(); ++j) {
    worst = std::max({worst, problem.lower[j] - x[j], x[j] - problem.upper[j]});
  }
  const Eigen::VectorXd activity = problem.matrix * x;
  for (int i = 0; i < problem.row_count(); ++i) {
    const double gap = activity[i] - problem.rhs[i];
    switch (problem.relations[i]) {
      case Relation::kLessEqual: worst = std::max(worst, gap); break;
      case Relation::kGreaterEqual: worst = std::max(worst, -gap); break;
      case Relation::kEqual: worst = std::max(worst, std::abs(gap)); break;
    }
  }
  return worst;
}

LPProblem permute_rows(const LPProblem& problem, const std::vector<int>& order) {
  LPProblem out = problem;
  const int m = problem.row_count();
  std::vector<int> new_of_old(m);
  for (int r = 0; r < m; ++r) {
    new_of_old[order[r]] = r;
    out.relations[r] = problem.relations[order[r]];
    out.rhs[r] = problem.rhs[order[r]];
    out.row_names[r] = problem.row_names[order[r]];
  }
  std::vector<Eigen::Triplet<double>> entries;
  for (int c = 0; c < problem.matrix.outerSize(); ++c) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(problem.matrix, c); it; ++it) {
      entries.emplace_back(new_of_old[it.row()], c, it.value());
    }
  }
  out.matrix.setZero();
  out.matrix.setFromTriplets(entries.begin(), entries.end());
  out.matrix.makeCompressed();
  return out;
}

}  // namespace coflow
