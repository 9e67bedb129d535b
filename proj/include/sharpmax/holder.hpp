#pragma once

#include "sharpmax/mmspace.hpp"

#include <Eigen/Dense>

#include <span>

namespace sharpmax {

/// Absolute slack used when validating Hölder bounds.
inline constexpr double kHolderTolerance = 1e-9;

struct HolderFunction {
  Eigen::VectorXd values;
  double beta = 1.0;
  double kappa = 0.0;
};

/// Smallest kappa with |u(i) - u(j)| <= kappa d(i,j)^beta over all pairs.
double holder_constant(const MetricMeasureSpace& space, const Eigen::VectorXd& values, double beta);

/// Same, restricted to pairs inside `subset`.
double holder_constant_on(const MetricMeasureSpace& space, std::span<const Index> subset,
                          std::span<const double> values, double beta);

HolderFunction make_holder(const MetricMeasureSpace& space, Eigen::VectorXd values, double beta);

/// McShane extension v(x) = min_{y in A} (u(y) + kappa d(x,y)^beta).
HolderFunction mcshane_extend(const MetricMeasureSpace& space, std::span<const Index> subset,
                              std::span<const double> boundary_values, double kappa, double beta);

void require_beta(double beta);

}  // namespace sharpmax
