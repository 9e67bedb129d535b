#include "sharpmax/sobolev.hpp"

#include "sharpmax/error.hpp"
#include "sharpmax/maximal.hpp"
#include "sharpmax/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sharpmax {

namespace {

double combine(double a, double b, double p) { return std::pow(std::pow(a, p) + std::pow(b, p), 1.0 / p); }

}  // namespace

double sobolev_norm(const MetricMeasureSpace& space, const Eigen::VectorXd& u, double p, const DStructureKind& kind) {
  const GradientCandidate g = minimal_gradient(space, u, kind, p);
  return combine(lp_norm(space, u, p), lp_norm(space, g.values, p), p);
}

double sharp_norm(const MetricMeasureSpace& space, const Eigen::VectorXd& u, double p, double beta) {
  const MaximalProfile m = sharp_maximal(space, u, p, beta, global_family(space));
  return combine(lp_norm(space, u, p), lp_norm(space, m.values, p), p);
}

NormReport norm_report(const MetricMeasureSpace& space, const Eigen::VectorXd& u, double p, double beta,
                       const DStructureKind& kind) {
  NormReport rep;
  rep.lp_norm = lp_norm(space, u, p);
  rep.grad_norm = lp_norm(space, minimal_gradient(space, u, kind, p).values, p);
  rep.sobolev_norm = combine(rep.lp_norm, rep.grad_norm, p);
  rep.sharp_norm = sharp_norm(space, u, p, beta);
  rep.ratio = rep.sobolev_norm > 0.0 ? rep.sharp_norm / rep.sobolev_norm : 1.0;
  rep.eta = eta_for_maximal(space, u, p, beta, kind);
  return rep;
}

NormEquivalenceReport norm_equivalence_report(const MetricMeasureSpace& space, std::span<const HolderFunction> samples,
                                              double p, double beta, const DStructureKind& kind) {
  NormEquivalenceReport rep;
  rep.rows.resize(samples.size());
  detail::parallel_chunks(samples.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) rep.rows[s] = norm_report(space, samples[s].values, p, beta, kind);
  });
  if (rep.rows.empty()) return rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  for (const NormReport& r : rep.rows) {
    rep.min_ratio = std::min(rep.min_ratio, r.ratio);
    rep.max_ratio = std::max(rep.max_ratio, r.ratio);
  }
  rep.spread = rep.min_ratio > 0.0 ? rep.max_ratio / rep.min_ratio : std::numeric_limits<double>::infinity();
  return rep;
}

}  // namespace sharpmax
