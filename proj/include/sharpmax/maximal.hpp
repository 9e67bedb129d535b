#pragma once

#include "sharpmax/covering.hpp"
#include "sharpmax/mmspace.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <vector>

namespace sharpmax {

enum class FamilyKind { Global, Localized, WhitneyLocal };

/// A finite ball family. `anchor` is B0 for localized families and Q* for
/// Whitney-local ones.
struct BallFamily {
  std::vector<Ball> balls;
  FamilyKind kind = FamilyKind::Global;
  std::optional<Ball> anchor;
};

/// Every canonical ball of the space.
BallFamily global_family(const MetricMeasureSpace& space);

/// Canonical balls B with 2B inside B0.
BallFamily localized_family(const MetricMeasureSpace& space, const Ball& b0);
BallFamily localized_family(const MetricMeasureSpace& space, const Ball& b0, const BallFamily& global);

/// Canonical balls contained in Q*.
BallFamily whitney_local_family(const MetricMeasureSpace& space, const Ball& q_star);
BallFamily whitney_local_family(const MetricMeasureSpace& space, const Ball& q_star, const BallFamily& global);

double average(const MetricMeasureSpace& space, const Eigen::VectorXd& f, std::span<const Index> set);

/// (avg_B |u - u_B|^q)^{1/q}
double oscillation(const MetricMeasureSpace& space, const Eigen::VectorXd& u, const Ball& b, double q);

/// (diam(B)^{-beta p} avg_B |u - u_B|^p)^{1/p}; zero for singleton balls.
double normalized_oscillation(const MetricMeasureSpace& space, const Eigen::VectorXd& u, const Ball& b, double p,
                              double beta);

struct MaximalProfile {
  Eigen::VectorXd values;
  FamilyKind family = FamilyKind::Global;
  double p = 2.0;
  double beta = 1.0;
};

MaximalProfile sharp_maximal(const MetricMeasureSpace& space, const Eigen::VectorXd& u, double p, double beta,
                             const BallFamily& family);

/// sup over cells Q of 1_Q times the maximal function over balls inside Q*.
MaximalProfile whitney_localized_maximal(const MetricMeasureSpace& space, const Eigen::VectorXd& u, double p,
                                         double beta, const WhitneyCover& cover);
MaximalProfile whitney_localized_maximal(const MetricMeasureSpace& space, const Eigen::VectorXd& u, double p,
                                         double beta, const WhitneyCover& cover, const BallFamily& global);

struct LevelSet {
  double lambda = 0.0;
  std::vector<Index> base;
  std::vector<Index> members;
};

/// {x in base : profile(x) > lambda}
LevelSet level_set(const MaximalProfile& profile, double lambda, std::span<const Index> base);

struct KolmogorovRecord {
  double c0 = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

/// Weak-to-strong estimate on B for the function u restricted to B.
KolmogorovRecord kolmogorov_check(const MetricMeasureSpace& space, const Ball& b, const Eigen::VectorXd& u, double q,
                                  double t);

/// Largest ratio |u(x)-u(y)| / (d(x,y)^beta (M(x)+M(y))) over pairs in a common Q*.
/// +inf when a pair with u(x) != u(y) has M(x) = M(y) = 0.
double pointwise_holder_ratio(const MetricMeasureSpace& space, const Eigen::VectorXd& u, double beta,
                              const MaximalProfile& profile, const WhitneyCover& cover);

/// Smallest C >= 1 with mu(U^lambda) <= C mu(V^{lambda/C}) for every lambda > 0,
/// where U uses `big` and V uses `local`, both restricted to B0.
double distributional_constant(const MetricMeasureSpace& space, const MaximalProfile& big,
                               const MaximalProfile& local, const Ball& b0);

}  // namespace sharpmax
