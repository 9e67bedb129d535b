#pragma once

#include "sharpmax/dstruct.hpp"
#include "sharpmax/holder.hpp"
#include "sharpmax/maximal.hpp"
#include "sharpmax/mmspace.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <vector>

namespace sharpmax {

struct PIParams {
  double q = 1.0;
  double p = 2.0;
  double beta = 1.0;
  double tau = 1.0;
};

/// Largest [ (avg_B |u-u_B|^q)^{1/q} / (diam(B)^beta (avg_{tau B} g^p)^{1/p}) ]^p over
/// non-singleton family balls. +inf when some ball has oscillation but no gradient.
double poincare_constant(const MetricMeasureSpace& space, const Eigen::VectorXd& u, const Eigen::VectorXd& g,
                         const PIParams& params, const BallFamily& family);
double poincare_constant(const MetricMeasureSpace& space, const Eigen::VectorXd& u, const GradientCandidate& g,
                         const PIParams& params, const BallFamily& family);

struct SelfImprovementRow {
  double q = 1.0;
  double k_qp = 0.0;
  double ratio = 0.0;  // (K_qp / K_1p)^{1/p}
};

struct SelfImprovementReport {
  double Q = 0.0;
  double q_max = 0.0;
  double k_1p = 0.0;
  std::vector<SelfImprovementRow> table;  // q in {1, (1+q_max)/2, 0.95 q_max}, tau = 1
  bool jensen_ordered = true;
};

SelfImprovementReport self_improvement_report(const MetricMeasureSpace& space, const Eigen::VectorXd& u,
                                              const Eigen::VectorXd& g, double p, double beta, double tau,
                                              std::optional<double> Q = std::nullopt);

struct AuditParams {
  int k = 1;
  double epsilon = 0.0;
};

struct AuditReport {
  double lhs = 0.0;
  double term_absorb = 0.0;
  double term_gradient = 0.0;
  double c_k_eps = 0.0;
  double implied_C1 = 0.0;
  double implied_C = 0.0;  // +inf when term_gradient = 0 < lhs
  double alpha = 0.0;
  double s = 0.0;
  double k_pp = 0.0;
  std::size_t family_size = 0;
  bool empty_family = false;
};

/// C(k, eps) = (4^{k eps} - 1)/eps, and k at eps = 0.
double c_k_epsilon(int k, double epsilon);

AuditReport main_inequality_audit(const MetricMeasureSpace& space, const Ball& b0, const Eigen::VectorXd& u,
                                  const Eigen::VectorXd& g, double p, double beta, const AuditParams& params,
                                  std::optional<double> k_pp = std::nullopt);

/// max over balls of (avg_B |u-u_B|^p)^{1/p} / (diam(B)^beta (avg_{2B} g^{p-eps})^{1/(p-eps)}).
double kz_constant(const MetricMeasureSpace& space, const Eigen::VectorXd& u, const Eigen::VectorXd& g, double p,
                   double beta, double epsilon, const BallFamily& family);

struct KzRow {
  double epsilon = 0.0;
  std::vector<double> constants;  // one per sample
  double max = 0.0;
};

struct KzReport {
  std::vector<KzRow> rows;
  std::vector<bool> monotone;  // per sample, nondecreasing in epsilon
};

KzReport kz_sweep(const MetricMeasureSpace& space, const DStructureKind& kind, double p, double beta,
                  std::span<const double> epsilons, std::span<const HolderFunction> samples);

struct HalfSplit {
  double radius = 0.0;
  double ratio = 1.0;
};

/// Over balls B(x, r) with r <= diam(B), the value of mu(U cap B(x,r)) / mu(B cap B(x,r))
/// closest to 1/2, where U is given by its members.
HalfSplit closest_half_split(const MetricMeasureSpace& space, const Ball& b, std::span<const Index> level, Index x);

}  // namespace sharpmax
