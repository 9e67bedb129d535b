#pragma once

#include "sharpmax/holder.hpp"
#include "sharpmax/mmspace.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sharpmax {

/// Feasibility slack shared by every gradient check.
inline constexpr double kFeasibilityTolerance = 1e-9;

enum class GradientKind { Hajlasz, GraphUpper };

struct DStructureKind {
  GradientKind tag = GradientKind::Hajlasz;
  double beta = 1.0;  // used by Hajlasz only

  static DStructureKind hajlasz(double beta) { return {GradientKind::Hajlasz, beta}; }
  static DStructureKind graph_upper() { return {GradientKind::GraphUpper, 1.0}; }
};

std::string to_string(GradientKind kind);

struct GradientCandidate {
  Eigen::VectorXd values;
  DStructureKind kind;
  double p = 2.0;
};

struct Path {
  std::vector<Index> vertices;
  double length = 0.0;
};

struct Feasibility {
  bool feasible = true;
  double worst_violation = 0.0;
  std::optional<Path> witness;  // pair (x, y) for Hajlasz, a graph path otherwise
};

Feasibility feasibility(const MetricMeasureSpace& space, const Eigen::VectorXd& u, const Eigen::VectorXd& g,
                        const DStructureKind& kind);
Feasibility feasibility(const MetricMeasureSpace& space, const Eigen::VectorXd& u, const GradientCandidate& g);

/// (sum mu_i |f_i|^p)^{1/p}
double lp_norm(const MetricMeasureSpace& space, const Eigen::VectorXd& f, double p);

/// Shortest-path distances from `source` with edge cost ((g_a + g_b)/2) len(a, b).
/// `prev` receives the predecessor tree when supplied.
Eigen::VectorXd gradient_distances(const MetricMeasureSpace& space, const Eigen::VectorXd& g, Index source,
                                   std::vector<Index>* prev = nullptr);

GradientCandidate minimal_hajlasz_gradient(const MetricMeasureSpace& space, const Eigen::VectorXd& u, double beta,
                                           double p);
GradientCandidate minimal_upper_gradient(const MetricMeasureSpace& space, const Eigen::VectorXd& u, double p);
GradientCandidate minimal_gradient(const MetricMeasureSpace& space, const Eigen::VectorXd& u,
                                   const DStructureKind& kind, double p);

/// kappa on E and g_u elsewhere, after validating that v agrees with u off E and
/// is Hölder with constant kappa.
GradientCandidate glue_gradient(const MetricMeasureSpace& space, const HolderFunction& u, const Eigen::VectorXd& v,
                                std::span<const Index> e, double kappa, const GradientCandidate& g_u);

/// Smallest eta with eta times the global sharp maximal profile feasible for u.
double eta_for_maximal(const MetricMeasureSpace& space, const Eigen::VectorXd& u, double p, double beta,
                       const DStructureKind& kind);

struct AxiomViolation {
  std::string axiom;  // "D2", "D3" or "D4"
  std::size_t sample = 0;
  double scalar = 0.0;
  double violation = 0.0;
  std::optional<Path> witness;
};

struct AxiomReport {
  std::size_t d2_checked = 0;
  std::size_t d3_checked = 0;
  std::size_t d4_checked = 0;
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// (D2) for every sample and scalar, (D3) for consecutive sample pairs, and
/// `glue_instances` seeded (D4) instances built by McShane extension off random sets.
AxiomReport check_axioms(const MetricMeasureSpace& space, const DStructureKind& kind,
                         std::span<const HolderFunction> samples, double p, std::uint64_t seed = 7,
                         std::size_t glue_instances = 10, std::span<const double> scalars = {});

}  // namespace sharpmax
