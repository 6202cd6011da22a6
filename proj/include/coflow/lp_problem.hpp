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

#pragma once

#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace coflow {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

/// Minimize objective . x subject to row relations on matrix * x and column
/// bounds. Columns and rows are named; column names are unique.
struct LPProblem {
  std::string name = "COFLOW";
  Eigen::VectorXd objective;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::vector<std::string> column_names;
  std::unordered_map<std::string, int> column_index;

  Eigen::SparseMatrix<double> matrix;  // rows x columns
  std::vector<Relation> relations;
  Eigen::VectorXd rhs;
  std::vector<std::string> row_names;

  int column_count() const { return static_cast<int>(column_names.size()); }
  int row_count() const { return static_cast<int>(row_names.size()); }
  std::optional<int> column(const std::string& name) const;
};

class LPBuilder {
 public:
  /// Throws std::invalid_argument on a duplicate name.
  int add_column(std::string name, double cost, double lower, double upper);
  void add_row(std::string name, const std::vector<std::pair<int, double>>& terms,
               Relation relation, double rhs);

  int column_count() const { return static_cast<int>(problem_.column_names.size()); }
  LPProblem build() &&;

 private:
  LPProblem problem_;
  std::vector<double> objective_, lower_, upper_, rhs_;
  std::vector<Eigen::Triplet<double>> entries_;
};

/// Largest amount by which x violates a row relation or a column bound.
double max_violation(const LPProblem& problem, const Eigen::VectorXd& x);

/// Same problem with rows reordered: row r of the result is row order[r].
LPProblem permute_rows(const LPProblem& problem, const std::vector<int>& order);

}  // namespace coflow
