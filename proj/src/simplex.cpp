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

#include "coflow/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>

namespace coflow {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;

enum class VarState { kBasic, kAtLower, kAtUpper, kFree };

// Product-form update: the basis after a pivot equals the previous basis
// times an identity matrix whose column `pivot` is replaced by `column`.
struct Eta {
  int pivot;
  double pivot_value;
  std::vector<std::pair<int, double>> others;  // off-pivot nonzeros
};

class BoundedSimplex {
 public:
  BoundedSimplex(const LPProblem& problem, const SolveOptions& options)
      : problem_(problem), options_(options) {
    n_ = problem.column_count();
    m_ = problem.row_count();
    setup();
  }

  LPSolution run() {
    LPSolution out;
    // Phase one.
    set_phase_costs(/*phase_one=*/true);
    SolveStatus s = iterate();
    if (s == SolveStatus::kIterationLimit) return finish(s);
    // Phase one is bounded below by zero; an unbounded ray here can only come
    // from numerical trouble, and the infeasibility test below still applies.
    refactor();
    double infeasibility = 0.0;
    for (int k = n_ + m_; k < total_; ++k) infeasibility += std::max(0.0, x_[k]);
    if (infeasibility > 1e-7) return finish(SolveStatus::kInfeasible);
    for (int k = n_ + m_; k < total_; ++k) {
      upper_[k] = 0.0;
      lower_[k] = 0.0;
      if (state_[k] != VarState::kBasic) {
        state_[k] = VarState::kAtLower;
        x_[k] = 0.0;
      }
    }
    // Phase two.
    set_phase_costs(/*phase_one=*/false);
    s = iterate();
    return finish(s);
  }

 private:
  void setup() {
    // Variables: structural columns, then one logical per row (column -e_i,
    // value equals the row activity), then artificials as needed.
    lower_.resize(n_ + m_);
    upper_.resize(n_ + m_);
    x_.assign(n_ + m_, 0.0);
    state_.assign(n_ + m_, VarState::kAtLower);
    for (int j = 0; j < n_; ++j) {
      lower_[j] = problem_.lower[j];
      upper_[j] = problem_.upper[j];
      if (std::isfinite(lower_[j])) {
        x_[j] = lower_[j];
        state_[j] = VarState::kAtLower;
      } else if (std::isfinite(upper_[j])) {
        x_[j] = upper_[j];
        state_[j] = VarState::kAtUpper;
      } else {
        x_[j] = 0.0;
        state_[j] = VarState::kFree;
      }
    }
    Eigen::VectorXd xs = Eigen::Map<Eigen::VectorXd>(x_.data(), n_);
    const Eigen::VectorXd activity = problem_.matrix * xs;

    basis_.assign(m_, -1);
    for (int i = 0; i < m_; ++i) {
      const int r = n_ + i;
      const double b = problem_.rhs[i];
      switch (problem_.relations[i]) {
        case Relation::kLessEqual: lower_[r] = -kInfinity; upper_[r] = b; break;
        case Relation::kGreaterEqual: lower_[r] = b; upper_[r] = kInfinity; break;
        case Relation::kEqual: lower_[r] = b; upper_[r] = b; break;
      }
      const double a = activity[i];
      if (a >= lower_[r] && a <= upper_[r]) {
        x_[r] = a;
        state_[r] = VarState::kBasic;
        basis_[i] = r;
        continue;
      }
      const bool below = a < lower_[r];
      x_[r] = below ? lower_[r] : upper_[r];
      state_[r] = below ? VarState::kAtLower : VarState::kAtUpper;
      // Row: activity - r + sign * art = 0  =>  art = (r - activity) / sign.
      const int k = static_cast<int>(x_.size());
      artificial_row_.push_back(i);
      artificial_sign_.push_back(below ? 1.0 : -1.0);
      lower_.push_back(0.0);
      upper_.push_back(kInfinity);
      x_.push_back(std::abs(x_[r] - a));
      state_.push_back(VarState::kBasic);
      basis_[i] = k;
    }
    total_ = static_cast<int>(x_.size());
    cost_.assign(total_, 0.0);
  }

  void set_phase_costs(bool phase_one) {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    if (phase_one) {
      for (int k = n_ + m_; k < total_; ++k) cost_[k] = 1.0;
    } else {
      for (int j = 0; j < n_; ++j) cost_[j] = problem_.objective[j];
    }
    bland_ = false;
    degenerate_run_ = 0;
  }

  // Calls f(row, value) for each nonzero of variable k's column.
  template <typename F>
  void for_column(int k, F&& f) const {
    if (k < n_) {
      for (SpMat::InnerIterator it(problem_.matrix, k); it; ++it) f(static_cast<int>(it.row()), it.value());
    } else if (k < n_ + m_) {
      f(k - n_, -1.0);
    } else {
      const int a = k - n_ - m_;
      f(artificial_row_[a], artificial_sign_[a]);
    }
  }

  void refactor() {
    std::vector<Eigen::Triplet<double>> entries;
    for (int p = 0; p < m_; ++p) {
      for_column(basis_[p], [&](int row, double v) { entries.emplace_back(row, p, v); });
    }
    SpMat B(m_, m_);
    B.setFromTriplets(entries.begin(), entries.end());
    B.makeCompressed();
    lu_.analyzePattern(B);
    lu_.factorize(B);
    if (lu_.info() != Eigen::Success) throw std::runtime_error("singular basis");
    etas_.clear();

    // Recompute basic values from the nonbasic ones.
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
    for (int k = 0; k < total_; ++k) {
      if (state_[k] == VarState::kBasic || x_[k] == 0.0) continue;
      const double v = x_[k];
      for_column(k, [&](int row, double a) { rhs[row] -= a * v; });
    }
    const Eigen::VectorXd xb = lu_.solve(rhs);
    for (int p = 0; p < m_; ++p) x_[basis_[p]] = xb[p];
  }

  Eigen::VectorXd ftran(int k) const {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(m_);
    for_column(k, [&](int row, double v) { a[row] += v; });
    Eigen::VectorXd z = lu_.solve(a);
    for (const Eta& eta : etas_) {
      const double zp = z[eta.pivot] / eta.pivot_value;
      if (zp != 0.0) {
        for (const auto& [i, v] : eta.others) z[i] -= v * zp;
      }
      z[eta.pivot] = zp;
    }
    return z;
  }

  Eigen::VectorXd btran() const {
    Eigen::VectorXd v(m_);
    for (int p = 0; p < m_; ++p) v[p] = cost_[basis_[p]];
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = v[it->pivot];
      for (const auto& [i, w] : it->others) s -= v[i] * w;
      v[it->pivot] = s / it->pivot_value;
    }
    return lu_.transpose().solve(v);
  }

  double reduced_cost(int k, const Eigen::VectorXd& y) const {
    double d = cost_[k];
    for_column(k, [&](int row, double v) { d -= v * y[row]; });
    return d;
  }

  // Returns entering variable and direction (+1 increase, -1 decrease), or -1.
  int price(const Eigen::VectorXd& y, int& direction, double& best_d) const {
    const double tol = options_.tolerance;
    int entering = -1;
    double best = 0.0;
    for (int k = 0; k < total_; ++k) {
      const VarState st = state_[k];
      if (st == VarState::kBasic) continue;
      if (upper_[k] - lower_[k] <= 0.0) continue;
      const double d = reduced_cost(k, y);
      int dir = 0;
      if ((st == VarState::kAtLower || st == VarState::kFree) && d < -tol) dir = 1;
      else if ((st == VarState::kAtUpper || st == VarState::kFree) && d > tol) dir = -1;
      if (dir == 0) continue;
      if (bland_) {
        direction = dir;
        best_d = d;
        return k;
      }
      if (std::abs(d) > best) {
        best = std::abs(d);
        entering = k;
        direction = dir;
        best_d = d;
      }
    }
    return entering;
  }

  SolveStatus iterate() {
    refactor();
    const double feas = options_.tolerance;
    const double pivot_tol = 1e-9;
    while (true) {
      if (iterations_ >= options_.iteration_limit) return SolveStatus::kIterationLimit;
      if (static_cast<int>(etas_.size()) >= options_.refactor_period) refactor();

      const Eigen::VectorXd y = btran();
      int dir = 0;
      double d = 0.0;
      const int q = price(y, dir, d);
      if (q < 0) {
        if (!etas_.empty()) {
          // Confirm optimality against a fresh factorization.
          refactor();
          const Eigen::VectorXd y2 = btran();
          int dir2 = 0;
          double d2 = 0.0;
          if (price(y2, dir2, d2) >= 0) continue;
        }
        return SolveStatus::kOptimal;
      }
      ++iterations_;

      const Eigen::VectorXd w = ftran(q);
      const double range = upper_[q] - lower_[q];

      // Harris two-pass ratio test (plain minimum ratio under Bland's rule).
      int leave = -1;
      double theta = kInfinity;
      if (!bland_) {
        double bound = kInfinity;
        for (int p = 0; p < m_; ++p) {
          const double alpha = dir * w[p];
          if (std::abs(alpha) <= pivot_tol) continue;
          const int b = basis_[p];
          if (alpha > 0 && std::isfinite(lower_[b])) {
            bound = std::min(bound, (x_[b] - lower_[b] + feas) / alpha);
          } else if (alpha < 0 && std::isfinite(upper_[b])) {
            bound = std::min(bound, (upper_[b] - x_[b] + feas) / -alpha);
          }
        }
        double best_alpha = 0.0;
        for (int p = 0; p < m_; ++p) {
          const double alpha = dir * w[p];
          if (std::abs(alpha) <= pivot_tol) continue;
          const int b = basis_[p];
          double ratio = kInfinity;
          if (alpha > 0 && std::isfinite(lower_[b])) ratio = (x_[b] - lower_[b]) / alpha;
          else if (alpha < 0 && std::isfinite(upper_[b])) ratio = (upper_[b] - x_[b]) / -alpha;
          if (ratio <= bound && std::abs(alpha) > best_alpha) {
            best_alpha = std::abs(alpha);
            leave = p;
            theta = std::max(ratio, 0.0);
          }
        }
      } else {
        for (int p = 0; p < m_; ++p) {
          const double alpha = dir * w[p];
          if (std::abs(alpha) <= pivot_tol) continue;
          const int b = basis_[p];
          double ratio = kInfinity;
          if (alpha > 0 && std::isfinite(lower_[b])) ratio = (x_[b] - lower_[b]) / alpha;
          else if (alpha < 0 && std::isfinite(upper_[b])) ratio = (upper_[b] - x_[b]) / -alpha;
          if (!std::isfinite(ratio)) continue;
          ratio = std::max(ratio, 0.0);
          if (leave < 0 || ratio < theta - 1e-12) {
            theta = ratio;
            leave = p;
          } else if (ratio <= theta + 1e-12 && b < basis_[leave]) {
            theta = std::min(theta, ratio);
            leave = p;
          }
        }
      }

      const bool flip = range <= theta;
      if (flip) {
        theta = range;
        leave = -1;
      }
      if (leave < 0 && !std::isfinite(theta)) return SolveStatus::kUnbounded;

      // Update values.
      if (theta != 0.0) {
        x_[q] += dir * theta;
        for (int p = 0; p < m_; ++p) {
          if (w[p] != 0.0) x_[basis_[p]] -= dir * theta * w[p];
        }
      }
      if (theta <= 1e-12) {
        if (++degenerate_run_ > options_.degeneracy_patience) bland_ = true;
      } else {
        degenerate_run_ = 0;
        bland_ = false;
      }

      if (flip) {
        state_[q] = dir > 0 ? VarState::kAtUpper : VarState::kAtLower;
        x_[q] = dir > 0 ? upper_[q] : lower_[q];
        continue;
      }

      const int out = basis_[leave];
      const double alpha = dir * w[leave];
      if (alpha > 0) {
        x_[out] = lower_[out];
        state_[out] = VarState::kAtLower;
      } else {
        x_[out] = upper_[out];
        state_[out] = VarState::kAtUpper;
      }
      if (out >= n_ + m_) {
        // Artificials never return once they leave.
        upper_[out] = 0.0;
        lower_[out] = 0.0;
        x_[out] = 0.0;
        state_[out] = VarState::kAtLower;
      }
      basis_[leave] = q;
      state_[q] = VarState::kBasic;

      Eta eta;
      eta.pivot = leave;
      eta.pivot_value = w[leave];
      for (int p = 0; p < m_; ++p) {
        if (p != leave && std::abs(w[p]) > 1e-14) eta.others.emplace_back(p, w[p]);
      }
      etas_.push_back(std::move(eta));
    }
  }

  LPSolution finish(SolveStatus status) {
    LPSolution out;
    out.status = status;
    out.iterations = iterations_;
    out.primal.resize(n_);
    for (int j = 0; j < n_; ++j) {
      double v = x_[j];
      if (status == SolveStatus::kOptimal) v = std::clamp(v, lower_[j], upper_[j]);
      out.primal[j] = v;
    }
    out.objective = problem_.objective.dot(out.primal);
    return out;
  }

  const LPProblem& problem_;
  SolveOptions options_;
  int n_ = 0, m_ = 0, total_ = 0;
  std::vector<double> lower_, upper_, x_, cost_;
  std::vector<VarState> state_;
  std::vector<int> basis_;
  std::vector<int> artificial_row_;
  std::vector<double> artificial_sign_;
  mutable Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
  long iterations_ = 0;
  bool bland_ = false;
  int degenerate_run_ = 0;
};

}  // namespace

LPSolution solve(const LPProblem& problem, const SolveOptions& options) {
  if (problem.row_count() == 0) {
    // Bounds only: each column sits at its cheaper finite bound.
    LPSolution out;
    out.primal.resize(problem.column_count());
    out.status = SolveStatus::kOptimal;
    for (int j = 0; j < problem.column_count(); ++j) {
      const double c = problem.objective[j];
      const double v = c > 0 ? problem.lower[j] : c < 0 ? problem.upper[j]
                       : (std::isfinite(problem.lower[j]) ? problem.lower[j] : 0.0);
      if (!std::isfinite(v)) out.status = SolveStatus::kUnbounded;
      out.primal[j] = std::isfinite(v) ? v : 0.0;
    }
    out.objective = problem.objective.dot(out.primal);
    return out;
  }
  BoundedSimplex simplex(problem, options);
  return simplex.run();
}

SolutionCheck check_solution(const LPProblem& problem, const LPSolution& solution) {
  SolutionCheck check;
  check.max_violation = max_violation(problem, solution.primal);
  const double recomputed = problem.objective.dot(solution.primal);
  check.objective_error =
      std::abs(solution.objective - recomputed) / std::max(1.0, std::abs(recomputed));
  return check;
}

}  // namespace coflow
