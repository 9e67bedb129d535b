#pragma once

#include "sharpmax/mmspace.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace sharpmax {

// ---------------------------------------------------------------------------
// 5r covering

/// Greedy selection by decreasing radius (input order breaks ties). Returns the
/// indices of the selected, pairwise disjoint balls in selection order.
std::vector<std::size_t> five_r_cover(std::span<const Ball> balls);

struct CoverCheck {
  bool disjoint = true;
  bool covers = true;
};

/// Verifies disjointness of the selection and that every input ball lies in 5B'
/// for some selected B'.
CoverCheck check_five_r_cover(const MetricMeasureSpace& space, std::span<const Ball> balls,
                              std::span<const std::size_t> selected);

// ---------------------------------------------------------------------------
// Whitney covers

inline constexpr double kPaperWhitneyRatio = 1.0 / 128.0;

struct WhitneyCell {
  Ball q;
  Ball q_star;  // 4Q, or B0 itself for the trivial cover
  double boundary_distance = 0.0;
};

struct WhitneyCover {
  Ball base;
  double c_w = kPaperWhitneyRatio;
  bool trivial = false;
  std::vector<WhitneyCell> cells;
  int overlap = 0;  // max over points of the number of Q* containing it
};

WhitneyCover whitney_cover(const MetricMeasureSpace& space, const Ball& base, double c_w = kPaperWhitneyRatio);

/// The single-cell cover {Q = Q* = B0}, used when B0 is the whole space.
WhitneyCover trivial_cover(const MetricMeasureSpace& space, const Ball& base);

/// whitney_cover when B0 is a proper subset, trivial_cover otherwise.
WhitneyCover whitney_or_trivial(const MetricMeasureSpace& space, const Ball& base, double c_w = kPaperWhitneyRatio);

int overlap_constant(const MetricMeasureSpace& space, const WhitneyCover& cover);

/// Violation counts for the Whitney properties; (W3)-(W6) are evaluated over all
/// canonical balls with membership standing in for inclusion.
struct WhitneyProperties {
  std::size_t w1_uncovered = 0;  // points of B0 outside every Q, or Q points outside B0
  int w2_overlap = 0;
  bool w2_inside_base = true;    // every Q* lies in B0
  std::size_t w3_violations = 0;
  std::size_t w4_violations = 0;
  std::size_t w5_violations = 0;
  std::size_t w6_violations = 0;
  std::size_t w3_checked = 0;
  std::size_t w4_checked = 0;
  std::size_t w5_checked = 0;
  std::size_t w6_checked = 0;
};

WhitneyProperties check_whitney_properties(const MetricMeasureSpace& space, const WhitneyCover& cover);

// ---------------------------------------------------------------------------
// Chains

struct Chain {
  Index target = 0;
  Ball base;                 // the ball B the chain lives in
  double tau = 1.0;
  double a = 2.0;
  double M = 1.0;            // smallest constant for which (c) and (d) hold
  std::vector<Ball> balls;   // B_0, B_1, ...
  std::vector<Ball> links;   // R_i inside B_i and B_{i+1}
};

struct ChainCheck {
  bool inside = true;        // (a) tau B_i in B
  bool terminal = true;      // (b) final balls centered at the target
  bool radii = true;         // (c) M^-1 a^-i diam(B) <= r_i <= M a^-i diam(B)
  bool links = true;         // (d) R_i in B_i and B_{i+1}, B_i and B_{i+1} in M R_i
  bool ok() const { return inside && terminal && radii && links; }
};

/// Chain of balls in B from B_0 (concentric with B, radius diam(B)/(4 tau)) to
/// balls centered at x. `geo_defect` may be supplied to skip the O(n^3) check.
Chain build_chain(const MetricMeasureSpace& space, const Ball& b, Index x, double tau, double a,
                  std::optional<double> geo_defect = std::nullopt);

ChainCheck check_chain(const MetricMeasureSpace& space, const Chain& chain);

// ---------------------------------------------------------------------------
// Stopping construction

/// One parent step B -> pi(B) taken while climbing to a stopping ball.
struct ParentStep {
  double child_measure = 0.0;
  double child_diam = 0.0;
  double parent_measure = 0.0;
  double parent_diam = 0.0;
  std::size_t child_size = 0;
};

struct StoppingBall {
  Ball ball;
  Index seed = 0;                 // the point x whose B_x this is
  double oscillation = 0.0;       // normalized oscillation of the ball
  double parent_oscillation = 0.0;
};

struct StoppingFamily {
  std::size_t cell = 0;
  double lambda = 0.0;
  double lambda_q = 0.0;
  std::vector<Index> level_points;     // Q^lambda
  std::vector<StoppingBall> candidates; // B_x for every x in Q^lambda
  std::vector<StoppingBall> balls;      // the disjoint 5r selection
  std::vector<ParentStep> steps;
};

/// Parent of B inside the cell: 2B when 2B lies in Q*, otherwise Q*.
Ball parent_ball(const MetricMeasureSpace& space, const WhitneyCell& cell, const Ball& b);

StoppingFamily stopping_family(const MetricMeasureSpace& space, const WhitneyCover& cover, std::size_t cell,
                               double lambda, const Eigen::VectorXd& u, double p, double beta);

}  // namespace sharpmax
