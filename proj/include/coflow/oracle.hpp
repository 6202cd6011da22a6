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

#include <optional>
#include <string>
#include <vector>

#include "coflow/model.hpp"

namespace coflow {

inline constexpr double kFeasibilityTolerance = 1e-9;

struct ScheduleViolation {
  std::string kind;
  int slot = 0;    // 1-based, 0 when not slot specific
  int flow = -1;   // flat flow index, -1 when not flow specific
  int edge = -1;   // edge index, -1 when not edge specific
  double magnitude = 0.0;

  std::string describe(const Instance& instance) const;
};

/// Independent feasibility check of a concrete schedule: edge loads within
/// capacity, per-flow conservation with the slot amount leaving the source
/// and reaching the sink (free-path), traffic only on the declared path
/// (single-path), nothing sent in slots t <= release, and every flow's
/// cumulative amount ending at one without overshooting. Tolerance 1e-9.
std::vector<ScheduleViolation> verify_schedule(const RateSchedule& schedule,
                                               const Instance& instance);

struct CoflowIntegralCheck {
  double integral = 0.0;        // trapezoid integral of 1 - X over [0, T]
  double discrete_bound = 0.0;  // 1 + sum_{t=1}^{T-1} (1 - X(t))
  double identity_residual = 0.0;  // |integral - (discrete_bound - 1/2)|
  double lemma_slack = 0.0;     // (C* - 1/2) - integral, nonnegative when the bound holds
  double lambda_integral = 0.0; // integral over lambda in (0,1] of the lambda-point
  double counting_residual = 0.0;  // |lambda_integral - integral|
};

/// Interpolates each X_j linearly inside slots and evaluates the integral
/// identities the stretch analysis relies on. The lambda integral is taken
/// by Gauss-Legendre quadrature over the pieces where the inverse of X_j is
/// linear, evaluating the inverse by bisection.
std::vector<CoflowIntegralCheck> continuous_interpolation_checks(
    const FractionalSchedule& fractional);

/// |sum_t t x(t) - (1 + sum_{t=1}^{T-1} (1 - X(t)))| for a fraction vector x
/// summing to one, X being its prefix sums.
double prefix_sum_identity_residual(const Eigen::Ref<const Eigen::VectorXd>& x);

/// Earliest time the piecewise-linear cumulative curve reaches `level`.
double first_time_reaching(const Eigen::Ref<const Eigen::VectorXd>& cumulative, double level);

/// Violation text if the LP value exceeds a known optimum by more than
/// 1e-6 relative.
std::optional<std::string> check_lp_lower_bound(double lp_objective, double exact_objective);

}  // namespace coflow
