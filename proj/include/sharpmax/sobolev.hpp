#pragma once

#include "sharpmax/dstruct.hpp"
#include "sharpmax/holder.hpp"
#include "sharpmax/mmspace.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace sharpmax {

struct NormReport {
  double lp_norm = 0.0;
  double grad_norm = 0.0;
  double sobolev_norm = 0.0;
  double sharp_norm = 0.0;
  double ratio = 1.0;  // sharp_norm / sobolev_norm
  double eta = 0.0;
};

double sobolev_norm(const MetricMeasureSpace& space, const Eigen::VectorXd& u, double p, const DStructureKind& kind);
double sharp_norm(const MetricMeasureSpace& space, const Eigen::VectorXd& u, double p, double beta);

/// Every norm of one function, plus the eta making eta M u a gradient of u.
NormReport norm_report(const MetricMeasureSpace& space, const Eigen::VectorXd& u, double p, double beta,
                       const DStructureKind& kind);

struct NormEquivalenceReport {
  std::vector<NormReport> rows;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double spread = 1.0;  // max_ratio / min_ratio
};

NormEquivalenceReport norm_equivalence_report(const MetricMeasureSpace& space, std::span<const HolderFunction> samples,
                                              double p, double beta, const DStructureKind& kind);

}  // namespace sharpmax
