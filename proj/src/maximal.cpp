#include "sharpmax/maximal.hpp"

#include "sharpmax/error.hpp"
#include "sharpmax/holder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sharpmax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Keeps the balls of `global` centered at c with radius <= bound(c).
template <typename Bound>
BallFamily filter_by_radius(const BallFamily& global, Bound&& bound) {
  BallFamily out;
  for (const Ball& b : global.balls) {
    if (b.radius <= bound(b.center)) out.balls.push_back(b);
  }
  return out;
}

std::vector<double> complement_distances(const MetricMeasureSpace& space, const Ball& region) {
  std::vector<double> out(space.size());
  for (Index c = 0; c < space.size(); ++c) out[c] = distance_to_complement(space, c, region);
  return out;
}

}  // namespace

BallFamily global_family(const MetricMeasureSpace& space) {
  BallFamily family;
  family.kind = FamilyKind::Global;
  for (Index c = 0; c < space.size(); ++c) {
    auto balls = canonical_balls(space, c);
    std::move(balls.begin(), balls.end(), std::back_inserter(family.balls));
  }
  return family;
}

BallFamily localized_family(const MetricMeasureSpace& space, const Ball& b0) {
  return localized_family(space, b0, global_family(space));
}

BallFamily localized_family(const MetricMeasureSpace& space, const Ball& b0, const BallFamily& global) {
  const auto out_dist = complement_distances(space, b0);
  auto family = filter_by_radius(global, [&](Index c) { return 0.5 * out_dist[c]; });
  family.kind = FamilyKind::Localized;
  family.anchor = b0;
  return family;
}

BallFamily whitney_local_family(const MetricMeasureSpace& space, const Ball& q_star) {
  return whitney_local_family(space, q_star, global_family(space));
}

BallFamily whitney_local_family(const MetricMeasureSpace& space, const Ball& q_star, const BallFamily& global) {
  const auto out_dist = complement_distances(space, q_star);
  auto family = filter_by_radius(global, [&](Index c) { return out_dist[c]; });
  family.kind = FamilyKind::WhitneyLocal;
  family.anchor = q_star;
  return family;
}

double average(const MetricMeasureSpace& space, const Eigen::VectorXd& f, std::span<const Index> set) {
  double mass = 0.0;
  double total = 0.0;
  for (Index x : set) {
    mass += space.measure()(x);
    total += space.measure()(x) * f(x);
  }
  return total / mass;
}

double oscillation(const MetricMeasureSpace& space, const Eigen::VectorXd& u, const Ball& b, double q) {
  const double mean = average(space, u, b.members);
  double mass = 0.0;
  double total = 0.0;
  for (Index x : b.members) {
    mass += space.measure()(x);
    total += space.measure()(x) * std::pow(std::abs(u(x) - mean), q);
  }
  return std::pow(total / mass, 1.0 / q);
}

double normalized_oscillation(const MetricMeasureSpace& space, const Eigen::VectorXd& u, const Ball& b, double p,
                              double beta) {
  if (b.set_diam == 0.0) return 0.0;
  return oscillation(space, u, b, p) / std::pow(b.set_diam, beta);
}

MaximalProfile sharp_maximal(const MetricMeasureSpace& space, const Eigen::VectorXd& u, double p, double beta,
                             const BallFamily& family) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "p must be at least 1");
  require_beta(beta);
  if (u.size() != space.size()) throw Error(ErrorCode::InvalidArgument, "function length does not match space");

  MaximalProfile profile;
  profile.values = Eigen::VectorXd::Zero(space.size());
  profile.family = family.kind;
  profile.p = p;
  profile.beta = beta;
  for (const Ball& b : family.balls) {
    const double value = normalized_oscillation(space, u, b, p, beta);
    if (value == 0.0) continue;
    for (Index x : b.members) profile.values(x) = std::max(profile.values(x), value);
  }
  return profile;
}

MaximalProfile whitney_localized_maximal(const MetricMeasureSpace& space, const Eigen::VectorXd& u, double p,
                                         double beta, const WhitneyCover& cover) {
  return whitney_localized_maximal(space, u, p, beta, cover, global_family(space));
}

MaximalProfile whitney_localized_maximal(const MetricMeasureSpace& space, const Eigen::VectorXd& u, double p,
                                         double beta, const WhitneyCover& cover, const BallFamily& global) {
  MaximalProfile out;
  out.values = Eigen::VectorXd::Zero(space.size());
  out.family = FamilyKind::WhitneyLocal;
  out.p = p;
  out.beta = beta;
  for (const WhitneyCell& cell : cover.cells) {
    const auto local = sharp_maximal(space, u, p, beta, whitney_local_family(space, cell.q_star, global));
    for (Index x : cell.q.members) out.values(x) = std::max(out.values(x), local.values(x));
  }
  return out;
}

LevelSet level_set(const MaximalProfile& profile, double lambda, std::span<const Index> base) {
  if (!(lambda >= 0.0)) throw Error(ErrorCode::InvalidArgument, "level must be nonnegative");
  LevelSet set;
  set.lambda = lambda;
  set.base.assign(base.begin(), base.end());
  for (Index x : base) {
    if (profile.values(x) > lambda) set.members.push_back(x);
  }
  return set;
}

KolmogorovRecord kolmogorov_check(const MetricMeasureSpace& space, const Ball& b, const Eigen::VectorXd& u, double q,
                                  double t) {
  if (!(q >= 1.0) || !(q < t)) throw Error(ErrorCode::ExponentOrder, "need 1 <= q < t");
  // mu{|u| > lambda} is a right-continuous step function, so the supremum of
  // lambda^t mu{|u| > lambda} is approached as lambda rises to each |u| value.
  std::vector<double> levels;
  for (Index x : b.members) {
    if (std::abs(u(x)) > 0.0) levels.push_back(std::abs(u(x)));
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  KolmogorovRecord rec;
  for (double v : levels) {
    double mass = 0.0;
    for (Index x : b.members) {
      if (std::abs(u(x)) >= v) mass += space.measure()(x);
    }
    rec.c0 = std::max(rec.c0, std::pow(v, t) * mass);
  }
  const double mu_b = measure_of(space, b);
  double integral = 0.0;
  for (Index x : b.members) integral += space.measure()(x) * std::pow(std::abs(u(x)), q);
  rec.lhs = std::pow(integral / mu_b, 1.0 / q);
  rec.rhs = std::pow(2.0, 1.0 / q) * std::pow(rec.c0 * q / (t - q), 1.0 / t) * std::pow(mu_b, -1.0 / t);
  rec.holds = rec.lhs <= rec.rhs + 1e-9;
  return rec;
}

double pointwise_holder_ratio(const MetricMeasureSpace& space, const Eigen::VectorXd& u, double beta,
                              const MaximalProfile& profile, const WhitneyCover& cover) {
  double worst = 0.0;
  for (const WhitneyCell& cell : cover.cells) {
    const auto& pts = cell.q_star.members;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const Index x = pts[i];
        const Index y = pts[j];
        const double gap = std::abs(u(x) - u(y));
        if (gap == 0.0) continue;
        const double scale = std::pow(space.d(x, y), beta) * (profile.values(x) + profile.values(y));
        if (scale == 0.0) return kInf;
        worst = std::max(worst, gap / scale);
      }
    }
  }
  return worst;
}

double distributional_constant(const MetricMeasureSpace& space, const MaximalProfile& big,
                               const MaximalProfile& local, const Ball& b0) {
  std::vector<double> levels;
  for (Index x : b0.members) {
    if (big.values(x) > 0.0) levels.push_back(big.values(x));
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  auto mass_at_least = [&](const MaximalProfile& prof, double v) {
    double m = 0.0;
    for (Index x : b0.members) {
      if (prof.values(x) >= v) m += space.measure()(x);
    }
    return m;
  };
  auto holds = [&](double c) {
    for (double v : levels) {
      if (mass_at_least(big, v) > c * mass_at_least(local, v / c) * (1.0 + 1e-12)) return false;
    }
    return true;
  };

  if (holds(1.0)) return 1.0;
  double lo = 1.0;
  double hi = 2.0;
  while (!holds(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) return kInf;
  }
  while (hi / lo > 1.0 + 1e-9) {
    const double mid = std::sqrt(lo * hi);
    if (holds(mid)) hi = mid; else lo = mid;
  }
  return hi;
}

}  // namespace sharpmax
