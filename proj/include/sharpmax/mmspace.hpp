#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sharpmax {

using Index = Eigen::Index;

/// Absolute tolerance for triangle-inequality validation of metric matrices.
inline constexpr double kMetricTolerance = 1e-9;

struct Edge {
  Index a = 0;
  Index b = 0;
  double length = 0.0;
};

/// Edge list a space was built from. Present only for graph-metric spaces.
struct GraphProvenance {
  std::vector<Edge> edges;
  std::vector<std::vector<std::pair<Index, double>>> adjacency;
};

/// A finite metric measure space: full distance matrix plus atomic weights.
///
/// Instances are immutable after construction and only obtainable through the
/// validating factories below.
class MetricMeasureSpace {
 public:
  static MetricMeasureSpace from_matrix(Eigen::MatrixXd dist, Eigen::VectorXd measure);
  static MetricMeasureSpace from_graph(Index n, std::span<const Edge> edges, Eigen::VectorXd measure);

  Index size() const noexcept { return dist_.rows(); }
  const Eigen::MatrixXd& dist() const noexcept { return dist_; }
  double d(Index i, Index j) const noexcept { return dist_(i, j); }
  const Eigen::VectorXd& measure() const noexcept { return measure_; }
  double total_measure() const noexcept { return measure_.sum(); }
  double mesh() const noexcept { return mesh_; }
  double diameter() const noexcept { return dist_.maxCoeff(); }
  const std::optional<GraphProvenance>& graph() const noexcept { return graph_; }
  bool has_graph() const noexcept { return graph_.has_value(); }

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  double measure_of(std::span<const Index> points) const;

 private:
  MetricMeasureSpace() = default;

  Eigen::MatrixXd dist_;
  Eigen::VectorXd measure_;
  double mesh_ = 0.0;
  std::optional<GraphProvenance> graph_;
  std::string name_;
};

/// Open ball {y : d(y, center) < radius} with its derived member set.
struct Ball {
  Index center = 0;
  double radius = 0.0;
  std::vector<Index> members;  // sorted
  double set_diam = 0.0;

  bool contains(Index x) const;
  bool subset_of(const Ball& other) const;
  bool intersects(const Ball& other) const;
  bool same_members(const Ball& other) const { return members == other.members; }
};

Ball ball(const MetricMeasureSpace& space, Index center, double radius);
/// The ball with the same center and radius scaled by `factor`.
Ball dilate(const MetricMeasureSpace& space, const Ball& b, double factor);
double measure_of(const MetricMeasureSpace& space, const Ball& b);
double set_diameter(const MetricMeasureSpace& space, std::span<const Index> points);

/// Radii at `center` realizing every distinct ball exactly once.
std::vector<double> canonical_radii(const MetricMeasureSpace& space, Index center);

/// One ball per canonical radius at `center`, in increasing radius order.
std::vector<Ball> canonical_balls(const MetricMeasureSpace& space, Index center);

/// min over y outside `region` of d(x, y); +inf when `region` is everything.
double distance_to_complement(const MetricMeasureSpace& space, Index x, const Ball& region);

/// Sorted distinct distances from `center` (the first entry is 0).
std::vector<double> distinct_distances(const MetricMeasureSpace& space, Index center);

struct SpaceStats {
  double c_mu = 1.0;
  double s = 0.0;
  double geo_defect = 0.0;
  double diameter = 0.0;
};

SpaceStats space_stats(const MetricMeasureSpace& space);
double doubling_constant(const MetricMeasureSpace& space);
double geodesic_defect(const MetricMeasureSpace& space);

enum class SpaceKind { Grid, Path, Cycle, BinaryTree };

struct SpaceSpec {
  SpaceKind kind = SpaceKind::Path;
  Index a = 2;  // width, point count or depth
  Index b = 1;  // height for grids
  double spacing = 1.0;

  static SpaceSpec grid(Index w, Index h, double spacing = 1.0) { return {SpaceKind::Grid, w, h, spacing}; }
  static SpaceSpec path(Index n, double spacing = 1.0) { return {SpaceKind::Path, n, 1, spacing}; }
  static SpaceSpec cycle(Index n, double spacing = 1.0) { return {SpaceKind::Cycle, n, 1, spacing}; }
  static SpaceSpec binary_tree(Index depth, double spacing = 1.0) { return {SpaceKind::BinaryTree, depth, 1, spacing}; }
};

MetricMeasureSpace generate_space(const SpaceSpec& spec);

/// Vertex sequence of a shortest path from `from` to `to`. Uses the graph when
/// the space has one, otherwise the points lying metrically between the ends.
std::vector<Index> shortest_path(const MetricMeasureSpace& space, Index from, Index to);

}  // namespace sharpmax
