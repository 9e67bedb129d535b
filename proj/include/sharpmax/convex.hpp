#pragma once

#include "sharpmax/mmspace.hpp"

#include <Eigen/Dense>

#include <span>
#include <utility>
#include <vector>

namespace sharpmax {

/// Linear constraint sum_i coef_i x_i >= rhs.
struct LinearConstraint {
  std::vector<std::pair<Index, double>> terms;
  double rhs = 0.0;
};

struct BarrierResult {
  Eigen::VectorXd x;
  double objective = 0.0;
  int newton_steps = 0;
};

/// Minimizes sum_i w_i x_i^p over {x > 0 : every constraint holds} with a
/// log-barrier Newton method. `start` must be strictly feasible.
BarrierResult minimize_power_sum(const Eigen::VectorXd& weights, double p, std::span<const LinearConstraint> rows,
                                 Eigen::VectorXd start, double rel_gap = 1e-10);

double power_sum(const Eigen::VectorXd& weights, const Eigen::VectorXd& x, double p);

}  // namespace sharpmax
