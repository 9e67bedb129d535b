#include "sharpmax/convex.hpp"

#include "sharpmax/error.hpp"

#include <cmath>
#include <limits>

namespace sharpmax {

double power_sum(const Eigen::VectorXd& weights, const Eigen::VectorXd& x, double p) {
  double total = 0.0;
  for (Index i = 0; i < x.size(); ++i) total += weights(i) * std::pow(x(i), p);
  return total;
}

namespace {

double slack(const LinearConstraint& row, const Eigen::VectorXd& x) {
  double s = -row.rhs;
  for (const auto& [i, a] : row.terms) s += a * x(i);
  return s;
}

}  // namespace

BarrierResult minimize_power_sum(const Eigen::VectorXd& weights, double p, std::span<const LinearConstraint> rows,
                                 Eigen::VectorXd start, double rel_gap) {
  const Index n = start.size();
  const double m = static_cast<double>(rows.size()) + static_cast<double>(n);
  BarrierResult out;
  Eigen::VectorXd x = std::move(start);
  for (Index i = 0; i < n; ++i) {
    if (!(x(i) > 0.0)) throw Error(ErrorCode::InvalidArgument, "barrier start must be positive");
  }
  for (const auto& row : rows) {
    if (!(slack(row, x) > 0.0)) throw Error(ErrorCode::InvalidArgument, "barrier start must be strictly feasible");
  }

  auto phi = [&](const Eigen::VectorXd& y, double t, bool& inside) {
    double value = t * power_sum(weights, y, p);
    inside = true;
    for (Index i = 0; i < n; ++i) {
      if (!(y(i) > 0.0)) {
        inside = false;
        return 0.0;
      }
      value -= std::log(y(i));
    }
    for (const auto& row : rows) {
      const double s = slack(row, y);
      if (!(s > 0.0)) {
        inside = false;
        return 0.0;
      }
      value -= std::log(s);
    }
    return value;
  };

  double t = m / std::max(power_sum(weights, x, p), 1e-300);
  Eigen::VectorXd grad(n);
  Eigen::MatrixXd hess(n, n);
  for (int outer = 0; outer < 200; ++outer) {
    for (int iter = 0; iter < 200; ++iter) {
      grad.setZero();
      hess.setZero();
      for (Index i = 0; i < n; ++i) {
        const double w = weights(i);
        grad(i) = t * p * w * std::pow(x(i), p - 1.0) - 1.0 / x(i);
        double curv = 1.0 / (x(i) * x(i));
        if (p != 1.0) curv += t * p * (p - 1.0) * w * std::pow(x(i), p - 2.0);
        hess(i, i) = curv;
      }
      for (const auto& row : rows) {
        const double s = slack(row, x);
        const double inv = 1.0 / s;
        const double inv2 = inv * inv;
        for (const auto& [i, a] : row.terms) {
          grad(i) -= a * inv;
          for (const auto& [j, b] : row.terms) hess(i, j) += a * b * inv2;
        }
      }
      const Eigen::VectorXd dx = hess.ldlt().solve(-grad);
      const double slope = grad.dot(dx);
      ++out.newton_steps;
      if (!(slope < 0.0) || -slope < 1e-12) break;

      bool inside = false;
      const double base = phi(x, t, inside);
      double alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 80; ++ls, alpha *= 0.5) {
        Eigen::VectorXd trial = x + alpha * dx;
        bool ok = false;
        const double value = phi(trial, t, ok);
        if (!ok) continue;
        const double noise = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(base);
        if (value <= base + 0.25 * alpha * slope + noise) {
          x = std::move(trial);
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    const double f = power_sum(weights, x, p);
    if (m / t <= rel_gap * std::max(f, 1e-300)) break;
    t *= 16.0;
  }
  out.objective = power_sum(weights, x, p);
  out.x = std::move(x);
  return out;
}

}  // namespace sharpmax
