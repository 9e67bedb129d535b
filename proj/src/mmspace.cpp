#include "sharpmax/mmspace.hpp"

#include "sharpmax/error.hpp"
#include "sharpmax/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

namespace sharpmax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_measure(const Eigen::VectorXd& measure, Index n) {
  if (measure.size() != n) {
    throw Error(ErrorCode::InvalidArgument,
                "measure has " + std::to_string(measure.size()) + " entries, expected " + std::to_string(n));
  }
  for (Index i = 0; i < n; ++i) {
    if (!(measure(i) > 0.0) || !std::isfinite(measure(i))) {
      throw Error(ErrorCode::NonPositiveWeight, "measure[" + std::to_string(i) + "] must be positive and finite");
    }
  }
}

// Single-source shortest paths; predecessor ties resolve to the smaller index.
void dijkstra(const GraphProvenance& g, Index source, std::vector<double>& dist, std::vector<Index>& pred) {
  const auto n = static_cast<Index>(g.adjacency.size());
  dist.assign(n, kInf);
  pred.assign(n, -1);
  using Item = std::pair<double, Index>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [du, u] = heap.top();
    heap.pop();
    if (du > dist[u]) continue;
    for (auto [v, len] : g.adjacency[u]) {
      const double alt = du + len;
      if (alt < dist[v] || (alt == dist[v] && pred[v] > u)) {
        const bool improved = alt < dist[v];
        dist[v] = alt;
        pred[v] = u;
        if (improved) heap.emplace(alt, v);
      }
    }
  }
}

}  // namespace

MetricMeasureSpace MetricMeasureSpace::from_matrix(Eigen::MatrixXd dist, Eigen::VectorXd measure) {
  const Index n = dist.rows();
  if (n < 2) throw Error(ErrorCode::SizeTooSmall, "a space needs at least two points");
  if (dist.cols() != n) throw Error(ErrorCode::InvalidMetric, "distance matrix must be square");
  validate_measure(measure, n);

  double mesh = kInf;
  for (Index i = 0; i < n; ++i) {
    if (dist(i, i) != 0.0) throw Error(ErrorCode::InvalidMetric, "nonzero diagonal at " + std::to_string(i));
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!std::isfinite(dist(i, j)) || !(dist(i, j) > 0.0)) {
        throw Error(ErrorCode::InvalidMetric,
                    "d[" + std::to_string(i) + "][" + std::to_string(j) + "] must be positive and finite");
      }
      if (std::abs(dist(i, j) - dist(j, i)) > kMetricTolerance) {
        throw Error(ErrorCode::InvalidMetric, "asymmetric entry at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      mesh = std::min(mesh, dist(i, j));
    }
  }
  for (Index k = 0; k < n; ++k) {
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        if (dist(i, j) > dist(i, k) + dist(k, j) + kMetricTolerance) {
          throw Error(ErrorCode::InvalidMetric, "triangle inequality fails for (" + std::to_string(i) + ", " +
                                                    std::to_string(k) + ", " + std::to_string(j) + ")");
        }
      }
    }
  }

  MetricMeasureSpace space;
  space.dist_ = std::move(dist);
  space.measure_ = std::move(measure);
  space.mesh_ = mesh;
  return space;
}

MetricMeasureSpace MetricMeasureSpace::from_graph(Index n, std::span<const Edge> edges, Eigen::VectorXd measure) {
  if (n < 2) throw Error(ErrorCode::SizeTooSmall, "a space needs at least two points");
  validate_measure(measure, n);

  GraphProvenance graph;
  graph.adjacency.resize(n);
  double mesh = 0.0;
  for (const Edge& e : edges) {
    if (e.a < 0 || e.b < 0 || e.a >= n || e.b >= n || e.a == e.b) {
      throw Error(ErrorCode::InvalidIndex, "edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) + ") is invalid");
    }
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      throw Error(ErrorCode::NonPositiveLength, "edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) + ")");
    }
    auto& adj = graph.adjacency[e.a];
    auto it = std::find_if(adj.begin(), adj.end(), [&](const auto& p) { return p.first == e.b; });
    if (it != adj.end()) {
      // Parallel edges collapse to the shortest one.
      if (e.length < it->second) {
        it->second = e.length;
        auto& back = graph.adjacency[e.b];
        std::find_if(back.begin(), back.end(), [&](const auto& p) { return p.first == e.a; })->second = e.length;
        for (auto& stored : graph.edges) {
          if ((stored.a == e.a && stored.b == e.b) || (stored.a == e.b && stored.b == e.a)) stored.length = e.length;
        }
      }
      continue;
    }
    adj.emplace_back(e.b, e.length);
    graph.adjacency[e.b].emplace_back(e.a, e.length);
    graph.edges.push_back(e);
  }
  for (auto& adj : graph.adjacency) std::sort(adj.begin(), adj.end());
  for (const Edge& e : graph.edges) mesh = std::max(mesh, e.length);

  Eigen::MatrixXd dist(n, n);
  std::vector<double> row;
  std::vector<Index> pred;
  for (Index s = 0; s < n; ++s) {
    dijkstra(graph, s, row, pred);
    for (Index t = 0; t < n; ++t) {
      if (!std::isfinite(row[t])) {
        throw Error(ErrorCode::DisconnectedGraph, "no path between " + std::to_string(s) + " and " + std::to_string(t));
      }
      dist(s, t) = row[t];
    }
  }
  // Path sums are accumulated in different orders from each end.
  dist = 0.5 * (dist + dist.transpose()).eval();

  MetricMeasureSpace space;
  space.dist_ = std::move(dist);
  space.measure_ = std::move(measure);
  space.mesh_ = mesh;
  space.graph_ = std::move(graph);
  return space;
}

double MetricMeasureSpace::measure_of(std::span<const Index> points) const {
  double total = 0.0;
  for (Index p : points) total += measure_(p);
  return total;
}

bool Ball::contains(Index x) const { return std::binary_search(members.begin(), members.end(), x); }

bool Ball::subset_of(const Ball& other) const {
  return std::includes(other.members.begin(), other.members.end(), members.begin(), members.end());
}

bool Ball::intersects(const Ball& other) const {
  auto a = members.begin();
  auto b = other.members.begin();
  while (a != members.end() && b != other.members.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

double set_diameter(const MetricMeasureSpace& space, std::span<const Index> points) {
  double diam = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) diam = std::max(diam, space.d(points[i], points[j]));
  }
  return diam;
}

Ball ball(const MetricMeasureSpace& space, Index center, double radius) {
  if (center < 0 || center >= space.size()) throw Error(ErrorCode::InvalidIndex, "ball center " + std::to_string(center));
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "ball radius must be positive");
  Ball b;
  b.center = center;
  b.radius = radius;
  for (Index y = 0; y < space.size(); ++y) {
    if (space.d(center, y) < radius) b.members.push_back(y);
  }
  b.set_diam = set_diameter(space, b.members);
  return b;
}

Ball dilate(const MetricMeasureSpace& space, const Ball& b, double factor) {
  return ball(space, b.center, factor * b.radius);
}

double measure_of(const MetricMeasureSpace& space, const Ball& b) { return space.measure_of(b.members); }

std::vector<double> distinct_distances(const MetricMeasureSpace& space, Index center) {
  std::vector<double> ds;
  ds.reserve(space.size());
  for (Index y = 0; y < space.size(); ++y) ds.push_back(space.d(center, y));
  std::sort(ds.begin(), ds.end());
  std::vector<double> out;
  for (double v : ds) {
    if (out.empty() || v - out.back() > 1e-12 * std::max(1.0, std::abs(v))) out.push_back(v);
  }
  return out;
}

std::vector<double> canonical_radii(const MetricMeasureSpace& space, Index center) {
  if (center < 0 || center >= space.size()) throw Error(ErrorCode::InvalidIndex, "center " + std::to_string(center));
  const auto ds = distinct_distances(space, center);
  std::vector<double> radii;
  radii.reserve(ds.size());
  for (std::size_t k = 0; k + 1 < ds.size(); ++k) radii.push_back(0.5 * (ds[k] + ds[k + 1]));
  radii.push_back(ds.back() + space.mesh());
  return radii;
}

std::vector<Ball> canonical_balls(const MetricMeasureSpace& space, Index center) {
  const auto radii = canonical_radii(space, center);
  std::vector<Index> order(space.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return space.d(center, a) < space.d(center, b); });

  std::vector<Ball> out;
  out.reserve(radii.size());
  std::vector<Index> members;
  double diam = 0.0;
  std::size_t next = 0;
  for (double r : radii) {
    while (next < order.size() && space.d(center, order[next]) < r) {
      const Index y = order[next++];
      for (Index z : members) diam = std::max(diam, space.d(y, z));
      members.push_back(y);
    }
    Ball b;
    b.center = center;
    b.radius = r;
    b.members = members;
    std::sort(b.members.begin(), b.members.end());
    b.set_diam = diam;
    out.push_back(std::move(b));
  }
  return out;
}

double distance_to_complement(const MetricMeasureSpace& space, Index x, const Ball& region) {
  double best = kInf;
  for (Index y = 0; y < space.size(); ++y) {
    if (!region.contains(y)) best = std::min(best, space.d(x, y));
  }
  return best;
}

double doubling_constant(const MetricMeasureSpace& space) {
  // mu(B(x,r)) is constant for r in (d_k, d_{k+1}] while mu(B(x,2r)) grows with r,
  // so the supremum over each interval is reached at r = d_{k+1}.
  const Index n = space.size();
  std::vector<double> best(n, 1.0);
  detail::parallel_chunks(static_cast<std::size_t>(n), [&](std::size_t lo, std::size_t hi) {
    std::vector<std::pair<double, double>> sorted;
    std::vector<double> dist_sorted;
    std::vector<double> prefix;
    for (auto x = static_cast<Index>(lo); x < static_cast<Index>(hi); ++x) {
      sorted.clear();
      for (Index y = 0; y < n; ++y) sorted.emplace_back(space.d(x, y), space.measure()(y));
      std::sort(sorted.begin(), sorted.end());
      dist_sorted.assign(sorted.size(), 0.0);
      prefix.assign(sorted.size() + 1, 0.0);
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        dist_sorted[i] = sorted[i].first;
        prefix[i + 1] = prefix[i] + sorted[i].second;
      }
      auto mass_below = [&](double r) {
        const auto k = std::lower_bound(dist_sorted.begin(), dist_sorted.end(), r) - dist_sorted.begin();
        return prefix[k];
      };
      double local = 1.0;
      for (std::size_t i = 1; i < dist_sorted.size(); ++i) {
        if (dist_sorted[i] == dist_sorted[i - 1]) continue;
        const double r = dist_sorted[i];
        local = std::max(local, mass_below(2.0 * r) / mass_below(r));
      }
      best[x] = local;
    }
  });
  return *std::max_element(best.begin(), best.end());
}

double geodesic_defect(const MetricMeasureSpace& space) {
  const Index n = space.size();
  constexpr double kFractions[] = {0.25, 0.5, 0.75};
  std::vector<double> worst(n, 0.0);
  detail::parallel_chunks(static_cast<std::size_t>(n), [&](std::size_t lo, std::size_t hi) {
    for (auto x = static_cast<Index>(lo); x < static_cast<Index>(hi); ++x) {
      double local = 0.0;
      for (Index y = x + 1; y < n; ++y) {
        const double dxy = space.d(x, y);
        for (double t : kFractions) {
          double best = kInf;
          for (Index z = 0; z < n && best > local; ++z) {
            const double dev = std::max(std::abs(space.d(x, z) - t * dxy), std::abs(space.d(z, y) - (1.0 - t) * dxy));
            best = std::min(best, dev);
          }
          local = std::max(local, best);
        }
      }
      worst[x] = local;
    }
  });
  return *std::max_element(worst.begin(), worst.end());
}

SpaceStats space_stats(const MetricMeasureSpace& space) {
  SpaceStats stats;
  stats.c_mu = doubling_constant(space);
  stats.s = std::log2(stats.c_mu);
  stats.geo_defect = geodesic_defect(space);
  stats.diameter = space.diameter();
  return stats;
}

MetricMeasureSpace generate_space(const SpaceSpec& spec) {
  if (!(spec.spacing > 0.0)) throw Error(ErrorCode::NonPositiveLength, "spacing must be positive");
  std::vector<Edge> edges;
  Index n = 0;
  std::string name;
  switch (spec.kind) {
    case SpaceKind::Grid: {
      if (spec.a < 2 || spec.b < 2) throw Error(ErrorCode::SizeTooSmall, "grid sides must be at least 2");
      n = spec.a * spec.b;
      for (Index y = 0; y < spec.b; ++y) {
        for (Index x = 0; x < spec.a; ++x) {
          const Index i = y * spec.a + x;
          if (x + 1 < spec.a) edges.push_back({i, i + 1, spec.spacing});
          if (y + 1 < spec.b) edges.push_back({i, i + spec.a, spec.spacing});
        }
      }
      name = "grid(" + std::to_string(spec.a) + "," + std::to_string(spec.b) + ")";
      break;
    }
    case SpaceKind::Path:
    case SpaceKind::Cycle: {
      const bool cycle = spec.kind == SpaceKind::Cycle;
      if (spec.a < (cycle ? 3 : 2)) throw Error(ErrorCode::SizeTooSmall, cycle ? "cycle needs 3 points" : "path needs 2 points");
      n = spec.a;
      for (Index i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, spec.spacing});
      if (cycle) edges.push_back({n - 1, 0, spec.spacing});
      name = (cycle ? "cycle(" : "path(") + std::to_string(n) + ")";
      break;
    }
    case SpaceKind::BinaryTree: {
      if (spec.a < 1) throw Error(ErrorCode::SizeTooSmall, "tree depth must be at least 1");
      n = (Index{1} << (spec.a + 1)) - 1;
      for (Index child = 1; child < n; ++child) edges.push_back({(child - 1) / 2, child, spec.spacing});
      name = "binary_tree(" + std::to_string(spec.a) + ")";
      break;
    }
  }
  auto space = MetricMeasureSpace::from_graph(n, edges, Eigen::VectorXd::Ones(n));
  space.set_name(name);
  return space;
}

std::vector<Index> shortest_path(const MetricMeasureSpace& space, Index from, Index to) {
  if (from < 0 || to < 0 || from >= space.size() || to >= space.size()) {
    throw Error(ErrorCode::InvalidIndex, "shortest_path endpoint");
  }
  std::vector<Index> path;
  if (space.has_graph()) {
    std::vector<double> dist;
    std::vector<Index> pred;
    dijkstra(*space.graph(), from, dist, pred);
    for (Index v = to; v != -1; v = pred[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
  }
  const double total = space.d(from, to);
  for (Index z = 0; z < space.size(); ++z) {
    if (space.d(from, z) + space.d(z, to) <= total + kMetricTolerance) path.push_back(z);
  }
  std::stable_sort(path.begin(), path.end(), [&](Index a, Index b) { return space.d(from, a) < space.d(from, b); });
  return path;
}

}  // namespace sharpmax
