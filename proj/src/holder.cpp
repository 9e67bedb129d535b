#include "sharpmax/holder.hpp"

#include "sharpmax/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sharpmax {

void require_beta(double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw Error(ErrorCode::BetaOutOfRange, "beta must lie in (0, 1]");
}

double holder_constant(const MetricMeasureSpace& space, const Eigen::VectorXd& values, double beta) {
  require_beta(beta);
  if (values.size() != space.size()) throw Error(ErrorCode::InvalidArgument, "function length does not match space");
  double kappa = 0.0;
  for (Index i = 0; i < space.size(); ++i) {
    for (Index j = i + 1; j < space.size(); ++j) {
      kappa = std::max(kappa, std::abs(values(i) - values(j)) / std::pow(space.d(i, j), beta));
    }
  }
  return kappa;
}

double holder_constant_on(const MetricMeasureSpace& space, std::span<const Index> subset,
                          std::span<const double> values, double beta) {
  require_beta(beta);
  double kappa = 0.0;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      const double dij = space.d(subset[i], subset[j]);
      if (dij == 0.0) continue;
      kappa = std::max(kappa, std::abs(values[i] - values[j]) / std::pow(dij, beta));
    }
  }
  return kappa;
}

HolderFunction make_holder(const MetricMeasureSpace& space, Eigen::VectorXd values, double beta) {
  HolderFunction f;
  f.kappa = holder_constant(space, values, beta);
  f.values = std::move(values);
  f.beta = beta;
  return f;
}

HolderFunction mcshane_extend(const MetricMeasureSpace& space, std::span<const Index> subset,
                              std::span<const double> boundary_values, double kappa, double beta) {
  require_beta(beta);
  if (subset.empty()) throw Error(ErrorCode::InvalidArgument, "extension needs a nonempty subset");
  if (subset.size() != boundary_values.size()) {
    throw Error(ErrorCode::InvalidArgument, "subset and boundary values differ in length");
  }
  if (!(kappa >= 0.0)) throw Error(ErrorCode::InvalidArgument, "kappa must be nonnegative");
  for (Index a : subset) {
    if (a < 0 || a >= space.size()) throw Error(ErrorCode::InvalidIndex, "subset point " + std::to_string(a));
  }
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      const double gap = std::abs(boundary_values[i] - boundary_values[j]);
      if (gap > kappa * std::pow(space.d(subset[i], subset[j]), beta) + kHolderTolerance) {
        throw Error(ErrorCode::BoundaryNotHolder, "points " + std::to_string(subset[i]) + " and " +
                                                      std::to_string(subset[j]) + " violate the kappa bound");
      }
    }
  }

  Eigen::VectorXd v(space.size());
  for (Index x = 0; x < space.size(); ++x) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < subset.size(); ++k) {
      best = std::min(best, boundary_values[k] + kappa * std::pow(space.d(x, subset[k]), beta));
    }
    v(x) = best;
  }
  // d(a,a)^beta = 0 already reproduces the data on A; assign anyway so the
  // restriction is bit-exact even when another term ties within rounding.
  for (std::size_t k = 0; k < subset.size(); ++k) v(subset[k]) = boundary_values[k];

  HolderFunction out;
  out.values = std::move(v);
  out.beta = beta;
  out.kappa = kappa;
  return out;
}

}  // namespace sharpmax
