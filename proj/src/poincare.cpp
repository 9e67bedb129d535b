#include "sharpmax/poincare.hpp"

#include "sharpmax/error.hpp"
#include "sharpmax/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sharpmax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double power_mean(const MetricMeasureSpace& space, const Eigen::VectorXd& g, std::span<const Index> set, double p) {
  double mass = 0.0;
  double total = 0.0;
  for (Index x : set) {
    mass += space.measure()(x);
    total += space.measure()(x) * std::pow(g(x), p);
  }
  return std::pow(total / mass, 1.0 / p);
}

void check_lengths(const MetricMeasureSpace& space, const Eigen::VectorXd& u, const Eigen::VectorXd& g) {
  if (u.size() != space.size() || g.size() != space.size()) {
    throw Error(ErrorCode::InvalidArgument, "function or gradient length does not match the space");
  }
}

}  // namespace

double poincare_constant(const MetricMeasureSpace& space, const Eigen::VectorXd& u, const Eigen::VectorXd& g,
                         const PIParams& params, const BallFamily& family) {
  check_lengths(space, u, g);
  if (!(params.q >= 1.0) || !(params.p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "exponents must be >= 1");
  require_beta(params.beta);
  if (!(params.tau >= 1.0)) throw Error(ErrorCode::InvalidArgument, "tau must be at least 1");

  double k = 0.0;
  for (const Ball& b : family.balls) {
    if (b.set_diam == 0.0) continue;
    const double left = oscillation(space, u, b, params.q);
    const Ball wide = params.tau == 1.0 ? b : ball(space, b.center, params.tau * b.radius);
    const double right = std::pow(b.set_diam, params.beta) * power_mean(space, g, wide.members, params.p);
    if (right == 0.0) {
      if (left > 0.0) return kInf;
      continue;
    }
    k = std::max(k, std::pow(left / right, params.p));
  }
  return k;
}

double poincare_constant(const MetricMeasureSpace& space, const Eigen::VectorXd& u, const GradientCandidate& g,
                         const PIParams& params, const BallFamily& family) {
#ifndef NDEBUG
  if (!feasibility(space, u, g).feasible) throw Error(ErrorCode::InfeasibleGradient, "g is not feasible for u");
#endif
  return poincare_constant(space, u, g.values, params, family);
}

SelfImprovementReport self_improvement_report(const MetricMeasureSpace& space, const Eigen::VectorXd& u,
                                              const Eigen::VectorXd& g, double p, double beta, double tau,
                                              std::optional<double> Q) {
  require_beta(beta);
  SelfImprovementReport rep;
  if (Q) {
    if (!(beta * p < *Q)) throw Error(ErrorCode::ExponentGap, "need beta p < Q");
    rep.Q = *Q;
  } else {
    rep.Q = std::max(std::log2(doubling_constant(space)), beta * p) + 1.0;
  }
  rep.q_max = rep.Q * p / (rep.Q - beta * p);

  const BallFamily family = global_family(space);
  rep.k_1p = poincare_constant(space, u, g, {1.0, p, beta, tau}, family);
  const double k_ref = poincare_constant(space, u, g, {1.0, p, beta, 1.0}, family);
  for (double q : {1.0, 0.5 * (1.0 + rep.q_max), 0.95 * rep.q_max}) {
    SelfImprovementRow row;
    row.q = q;
    row.k_qp = poincare_constant(space, u, g, {q, p, beta, 1.0}, family);
    row.ratio = k_ref > 0.0 ? std::pow(row.k_qp / k_ref, 1.0 / p) : 0.0;
    if (!rep.table.empty() && row.k_qp < rep.table.back().k_qp) rep.jensen_ordered = false;
    rep.table.push_back(row);
  }
  return rep;
}

double c_k_epsilon(int k, double epsilon) {
  return epsilon > 0.0 ? (std::pow(4.0, k * epsilon) - 1.0) / epsilon : static_cast<double>(k);
}

AuditReport main_inequality_audit(const MetricMeasureSpace& space, const Ball& b0, const Eigen::VectorXd& u,
                                  const Eigen::VectorXd& g, double p, double beta, const AuditParams& params,
                                  std::optional<double> k_pp) {
  check_lengths(space, u, g);
  if (!(p > 1.0)) throw Error(ErrorCode::InvalidArgument, "the audit needs p > 1");
  if (!(params.epsilon >= 0.0 && params.epsilon < p - 1.0)) {
    throw Error(ErrorCode::EpsilonOutOfRange, "epsilon must lie in [0, p-1)");
  }
  if (params.k < 1) throw Error(ErrorCode::InvalidArgument, "k must be a positive integer");
  require_beta(beta);

  AuditReport rep;
  const double eps = params.epsilon;
  rep.s = std::log2(doubling_constant(space));
  rep.alpha = beta * p * p / (2.0 * (rep.s + beta * p));
  rep.c_k_eps = c_k_epsilon(params.k, eps);

  const BallFamily global = global_family(space);
  rep.k_pp = k_pp ? *k_pp : poincare_constant(space, u, g, {p, p, beta, 1.0}, global);
  rep.term_absorb = std::pow(2.0, params.k * (eps - rep.alpha)) +
                    rep.k_pp * std::pow(4.0, params.k * eps) / std::pow(params.k, p - 1.0);

  const BallFamily local = localized_family(space, b0, global);
  rep.family_size = local.balls.size();
  rep.empty_family = local.balls.empty();
  const Eigen::VectorXd m = sharp_maximal(space, u, p, beta, local).values;
  for (Index x : b0.members) {
    if (m(x) == 0.0) continue;
    const double w = space.measure()(x);
    rep.lhs += w * std::pow(m(x), p - eps);
    rep.term_gradient += w * std::pow(g(x), p) * std::pow(m(x), -eps);
  }

  const double denom = rep.term_absorb * rep.lhs + rep.c_k_eps * rep.k_pp * rep.term_gradient;
  rep.implied_C1 = rep.lhs == 0.0 ? 0.0 : rep.lhs / denom;
  if (rep.lhs == 0.0) {
    rep.implied_C = 0.0;
  } else {
    rep.implied_C = rep.term_gradient > 0.0 ? rep.lhs / rep.term_gradient : kInf;
  }
  return rep;
}

double kz_constant(const MetricMeasureSpace& space, const Eigen::VectorXd& u, const Eigen::VectorXd& g, double p,
                   double beta, double epsilon, const BallFamily& family) {
  check_lengths(space, u, g);
  if (!(epsilon >= 0.0 && epsilon < p - 1.0)) throw Error(ErrorCode::EpsilonOutOfRange, "epsilon must lie in [0, p-1)");
  const double r = p - epsilon;
  double k = 0.0;
  for (const Ball& b : family.balls) {
    if (b.set_diam == 0.0) continue;
    const double left = oscillation(space, u, b, p);
    const Ball wide = ball(space, b.center, 2.0 * b.radius);
    const double right = std::pow(b.set_diam, beta) * power_mean(space, g, wide.members, r);
    if (right == 0.0) {
      if (left > 0.0) return kInf;
      continue;
    }
    k = std::max(k, left / right);
  }
  return k;
}

KzReport kz_sweep(const MetricMeasureSpace& space, const DStructureKind& kind, double p, double beta,
                  std::span<const double> epsilons, std::span<const HolderFunction> samples) {
  if (!(p > 1.0)) throw Error(ErrorCode::InvalidArgument, "the sweep needs p > 1");
  const BallFamily family = global_family(space);
  std::vector<std::vector<double>> table(samples.size());
  detail::parallel_chunks(samples.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) {
      const Eigen::VectorXd g = minimal_gradient(space, samples[s].values, kind, p).values;
      for (double eps : epsilons) table[s].push_back(kz_constant(space, samples[s].values, g, p, beta, eps, family));
    }
  });

  KzReport rep;
  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    KzRow row;
    row.epsilon = epsilons[e];
    for (std::size_t s = 0; s < samples.size(); ++s) {
      row.constants.push_back(table[s][e]);
      row.max = std::max(row.max, table[s][e]);
    }
    rep.rows.push_back(std::move(row));
  }
  std::vector<std::size_t> order(epsilons.size());
  for (std::size_t e = 0; e < order.size(); ++e) order[e] = e;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return epsilons[a] < epsilons[b]; });
  for (std::size_t s = 0; s < samples.size(); ++s) {
    bool mono = true;
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (table[s][order[i]] < table[s][order[i - 1]] * (1.0 - 1e-12)) mono = false;
    }
    rep.monotone.push_back(mono);
  }
  return rep;
}

HalfSplit closest_half_split(const MetricMeasureSpace& space, const Ball& b, std::span<const Index> level, Index x) {
  std::vector<char> in_level(space.size(), 0);
  for (Index y : level) in_level[y] = 1;
  HalfSplit best;
  double best_gap = kInf;
  for (const Ball& small : canonical_balls(space, x)) {
    if (small.radius > b.set_diam && best_gap < kInf) break;
    double in_u = 0.0;
    double in_b = 0.0;
    for (Index y : small.members) {
      if (!b.contains(y)) continue;
      in_b += space.measure()(y);
      if (in_level[y]) in_u += space.measure()(y);
    }
    if (in_b == 0.0) continue;
    const double ratio = in_u / in_b;
    if (std::abs(ratio - 0.5) < best_gap) {
      best_gap = std::abs(ratio - 0.5);
      best = {small.radius, ratio};
    }
  }
  return best;
}

}  // namespace sharpmax
