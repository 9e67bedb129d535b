#include "sharpmax/dstruct.hpp"

#include "sharpmax/convex.hpp"
#include "sharpmax/error.hpp"
#include "sharpmax/maximal.hpp"
#include "sharpmax/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>

namespace sharpmax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCutTolerance = 1e-7;

const GraphProvenance& require_graph(const MetricMeasureSpace& space) {
  if (!space.has_graph()) throw Error(ErrorCode::NotAGraphSpace, "upper gradients need a graph space");
  return *space.graph();
}

void require_length(const MetricMeasureSpace& space, const Eigen::VectorXd& f, const char* what) {
  if (f.size() != space.size()) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " length does not match the space");
  }
}

Path trace(const std::vector<Index>& prev, Index source, Index target, const Eigen::VectorXd& dist) {
  Path path;
  for (Index v = target; v != -1; v = v == source ? -1 : prev[v]) path.vertices.push_back(v);
  std::reverse(path.vertices.begin(), path.vertices.end());
  path.length = dist(target);
  return path;
}

double path_metric_length(const MetricMeasureSpace& space, const std::vector<Index>& vertices) {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) len += space.d(vertices[i], vertices[i + 1]);
  return len;
}

struct Cut {
  double violation = 0.0;
  Index source = 0;
  Index target = 0;
  std::vector<Index> vertices;
};

// Most violated target per source under the current gradient.
std::vector<Cut> separate(const MetricMeasureSpace& space, const Eigen::VectorXd& u, const Eigen::VectorXd& g) {
  const auto n = static_cast<std::size_t>(space.size());
  std::vector<Cut> cuts(n);
  detail::parallel_chunks(n, [&](std::size_t lo, std::size_t hi) {
    std::vector<Index> prev;
    for (std::size_t s = lo; s < hi; ++s) {
      const auto src = static_cast<Index>(s);
      const Eigen::VectorXd dist = gradient_distances(space, g, src, &prev);
      Cut best;
      best.source = src;
      for (Index t = 0; t < space.size(); ++t) {
        const double viol = std::abs(u(src) - u(t)) - dist(t);
        if (viol > best.violation) {
          best.violation = viol;
          best.target = t;
        }
      }
      if (best.violation > 0.0) best.vertices = trace(prev, src, best.target, dist).vertices;
      cuts[s] = std::move(best);
    }
  });
  return cuts;
}

LinearConstraint path_constraint(const MetricMeasureSpace& space, const std::vector<Index>& vertices, double rhs) {
  std::vector<double> coef(space.size(), 0.0);
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const double half = 0.5 * space.d(vertices[i], vertices[i + 1]);
    coef[vertices[i]] += half;
    coef[vertices[i + 1]] += half;
  }
  LinearConstraint row;
  row.rhs = rhs;
  for (Index v = 0; v < space.size(); ++v) {
    if (coef[v] != 0.0) row.terms.emplace_back(v, coef[v]);
  }
  return row;
}

}  // namespace

std::string to_string(GradientKind kind) { return kind == GradientKind::Hajlasz ? "hajlasz" : "upper"; }

double lp_norm(const MetricMeasureSpace& space, const Eigen::VectorXd& f, double p) {
  double total = 0.0;
  for (Index i = 0; i < f.size(); ++i) total += space.measure()(i) * std::pow(std::abs(f(i)), p);
  return std::pow(total, 1.0 / p);
}

Eigen::VectorXd gradient_distances(const MetricMeasureSpace& space, const Eigen::VectorXd& g, Index source,
                                   std::vector<Index>* prev) {
  const GraphProvenance& graph = require_graph(space);
  const Index n = space.size();
  Eigen::VectorXd dist = Eigen::VectorXd::Constant(n, kInf);
  if (prev) prev->assign(n, -1);
  using Item = std::pair<double, Index>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist(source) = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [du, a] = heap.top();
    heap.pop();
    if (du > dist(a)) continue;
    for (const auto& [b, len] : graph.adjacency[a]) {
      const double nd = du + 0.5 * (g(a) + g(b)) * len;
      if (nd < dist(b)) {
        dist(b) = nd;
        if (prev) (*prev)[b] = a;
        heap.emplace(nd, b);
      }
    }
  }
  return dist;
}

Feasibility feasibility(const MetricMeasureSpace& space, const Eigen::VectorXd& u, const Eigen::VectorXd& g,
                        const DStructureKind& kind) {
  require_length(space, u, "function");
  require_length(space, g, "gradient");
  Feasibility out;
  const Index n = space.size();
  if (kind.tag == GradientKind::Hajlasz) {
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        const double viol = std::abs(u(i) - u(j)) - std::pow(space.d(i, j), kind.beta) * (g(i) + g(j));
        if (viol > out.worst_violation) {
          out.worst_violation = viol;
          out.witness = Path{{i, j}, space.d(i, j)};
        }
      }
    }
  } else {
    require_graph(space);
    std::vector<Index> prev;
    for (Index s = 0; s < n; ++s) {
      const Eigen::VectorXd dist = gradient_distances(space, g, s, &prev);
      for (Index t = s + 1; t < n; ++t) {
        const double viol = std::abs(u(s) - u(t)) - dist(t);
        if (viol > out.worst_violation) {
          out.worst_violation = viol;
          Path path = trace(prev, s, t, dist);
          path.length = path_metric_length(space, path.vertices);
          out.witness = std::move(path);
        }
      }
    }
  }
  out.feasible = out.worst_violation <= kFeasibilityTolerance;
  return out;
}

Feasibility feasibility(const MetricMeasureSpace& space, const Eigen::VectorXd& u, const GradientCandidate& g) {
  return feasibility(space, u, g.values, g.kind);
}

GradientCandidate minimal_hajlasz_gradient(const MetricMeasureSpace& space, const Eigen::VectorXd& u, double beta,
                                           double p) {
  require_beta(beta);
  require_length(space, u, "function");
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "p must be at least 1");
  const Index n = space.size();
  GradientCandidate out{Eigen::VectorXd::Zero(n), DStructureKind::hajlasz(beta), p};

  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  std::vector<LinearConstraint> rows;
  Eigen::VectorXd baseline = Eigen::VectorXd::Zero(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double need = std::abs(u(i) - u(j)) / std::pow(space.d(i, j), beta);
      c(i, j) = c(j, i) = need;
      if (need == 0.0) continue;
      rows.push_back({{{i, 1.0}, {j, 1.0}}, need});
      baseline(i) = std::max(baseline(i), 0.5 * need);
      baseline(j) = std::max(baseline(j), 0.5 * need);
    }
  }
  if (rows.empty()) return out;

  Eigen::VectorXd start = 2.0 * baseline;
  const double floor = 1e-6 * baseline.maxCoeff();
  for (Index i = 0; i < n; ++i) start(i) = std::max(start(i), floor);
  Eigen::VectorXd g = minimize_power_sum(space.measure(), p, rows, std::move(start)).x;

  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (j != i) g(i) = std::max(g(i), c(i, j) - g(j));
    }
  }
  out.values = std::move(g);
  return out;
}

GradientCandidate minimal_upper_gradient(const MetricMeasureSpace& space, const Eigen::VectorXd& u, double p) {
  const GraphProvenance& graph = require_graph(space);
  require_length(space, u, "function");
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "p must be at least 1");
  const Index n = space.size();
  GradientCandidate out{Eigen::VectorXd::Zero(n), DStructureKind::graph_upper(), p};

  Eigen::VectorXd baseline = Eigen::VectorXd::Zero(n);
  std::vector<LinearConstraint> rows;
  for (const Edge& e : graph.edges) {
    const double jump = std::abs(u(e.a) - u(e.b));
    if (jump == 0.0) continue;
    baseline(e.a) = std::max(baseline(e.a), jump / e.length);
    baseline(e.b) = std::max(baseline(e.b), jump / e.length);
    rows.push_back({{{e.a, 0.5 * e.length}, {e.b, 0.5 * e.length}}, jump});
  }
  if (rows.empty()) return out;

  Eigen::VectorXd start = 2.0 * baseline;
  const double floor = 1e-6 * baseline.maxCoeff();
  for (Index i = 0; i < n; ++i) start(i) = std::max(start(i), floor);

  Eigen::VectorXd g = start;
  for (int round = 0; round < 1000; ++round) {
    g = minimize_power_sum(space.measure(), p, rows, start).x;
    bool added = false;
    for (Cut& cut : separate(space, u, g)) {
      if (cut.violation <= kCutTolerance) continue;
      rows.push_back(path_constraint(space, cut.vertices, std::abs(u(cut.source) - u(cut.target))));
      added = true;
    }
    if (!added) break;
  }

  // Raising g uniformly by eta adds at least eta d(s, t) to every path cost.
  double eta = 0.0;
  for (const Cut& cut : separate(space, u, g)) {
    if (cut.violation > 0.0) eta = std::max(eta, cut.violation / space.d(cut.source, cut.target));
  }
  if (eta > 0.0) g.array() += eta * (1.0 + 1e-12);
  out.values = std::move(g);
  return out;
}

GradientCandidate minimal_gradient(const MetricMeasureSpace& space, const Eigen::VectorXd& u,
                                   const DStructureKind& kind, double p) {
  return kind.tag == GradientKind::Hajlasz ? minimal_hajlasz_gradient(space, u, kind.beta, p)
                                           : minimal_upper_gradient(space, u, p);
}

GradientCandidate glue_gradient(const MetricMeasureSpace& space, const HolderFunction& u, const Eigen::VectorXd& v,
                                std::span<const Index> e, double kappa, const GradientCandidate& g_u) {
  require_length(space, u.values, "function");
  require_length(space, v, "glued function");
  require_length(space, g_u.values, "gradient");
  std::vector<char> in_e(space.size(), 0);
  for (Index x : e) {
    if (x < 0 || x >= space.size()) throw Error(ErrorCode::InvalidIndex, "glue set index " + std::to_string(x));
    in_e[x] = 1;
  }
  for (Index x = 0; x < space.size(); ++x) {
    if (!in_e[x] && v(x) != u.values(x)) {
      throw Error(ErrorCode::RestrictionMismatch, "v differs from u at point " + std::to_string(x) + " outside E");
    }
  }
  if (holder_constant(space, v, u.beta) > kappa + kHolderTolerance) {
    throw Error(ErrorCode::NotHolder, "v is not Hölder with the given constant");
  }
  GradientCandidate out = g_u;
  for (Index x = 0; x < space.size(); ++x) {
    if (in_e[x]) out.values(x) = kappa;
  }
  return out;
}

double eta_for_maximal(const MetricMeasureSpace& space, const Eigen::VectorXd& u, double p, double beta,
                       const DStructureKind& kind) {
  require_length(space, u, "function");
  const Eigen::VectorXd m = sharp_maximal(space, u, p, beta, global_family(space)).values;
  const Index n = space.size();
  double eta = 0.0;
  if (kind.tag == GradientKind::Hajlasz) {
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        const double gap = std::abs(u(i) - u(j));
        if (gap == 0.0) continue;
        const double scale = std::pow(space.d(i, j), kind.beta) * (m(i) + m(j));
        if (scale == 0.0) throw Error(ErrorCode::UnboundedEta, "maximal function vanishes on a pair where u jumps");
        eta = std::max(eta, gap / scale);
      }
    }
  } else {
    for (Index s = 0; s < n; ++s) {
      const Eigen::VectorXd dist = gradient_distances(space, m, s);
      for (Index t = s + 1; t < n; ++t) {
        const double gap = std::abs(u(s) - u(t));
        if (gap == 0.0) continue;
        if (dist(t) == 0.0) throw Error(ErrorCode::UnboundedEta, "maximal function vanishes along a path where u jumps");
        eta = std::max(eta, gap / dist(t));
      }
    }
  }
  return eta;
}

AxiomReport check_axioms(const MetricMeasureSpace& space, const DStructureKind& kind,
                         std::span<const HolderFunction> samples, double p, std::uint64_t seed,
                         std::size_t glue_instances, std::span<const double> scalars) {
  static constexpr double kDefaultScalars[] = {-2.0, -1.0, 0.5};
  if (scalars.empty()) scalars = kDefaultScalars;
  AxiomReport report;
  if (samples.empty()) return report;

  std::vector<GradientCandidate> grads(samples.size());
  detail::parallel_chunks(samples.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) grads[k] = minimal_gradient(space, samples[k].values, kind, p);
  });

  auto record = [&](const char* axiom, std::size_t sample, double scalar, const Feasibility& f) {
    if (!f.feasible) report.violations.push_back({axiom, sample, scalar, f.worst_violation, f.witness});
  };

  for (std::size_t k = 0; k < samples.size(); ++k) {
    for (double a : scalars) {
      ++report.d2_checked;
      const Eigen::VectorXd au = a * samples[k].values;
      const Eigen::VectorXd ag = std::abs(a) * grads[k].values;
      record("D2", k, a, feasibility(space, au, ag, kind));
    }
  }

  const std::size_t pairs = samples.size() < 2 ? 0 : (samples.size() == 2 ? 1 : samples.size());
  for (std::size_t k = 0; k < pairs; ++k) {
    const std::size_t l = (k + 1) % samples.size();
    ++report.d3_checked;
    const Eigen::VectorXd sum = samples[k].values + samples[l].values;
    const Eigen::VectorXd gsum = grads[k].values + grads[l].values;
    record("D3", k, 1.0, feasibility(space, sum, gsum, kind));
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 2);
  const Index n = space.size();
  for (std::size_t inst = 0; inst < glue_instances && n >= 2; ++inst) {
    const std::size_t k = inst % samples.size();
    const HolderFunction& u = samples[k];
    std::vector<Index> e;
    std::vector<Index> rest;
    for (Index x = 0; x < n; ++x) (coin(rng) == 0 ? e : rest).push_back(x);
    if (e.empty()) {
      e.push_back(rest.back());
      rest.pop_back();
    }
    if (rest.empty()) {
      rest.push_back(e.back());
      e.pop_back();
    }
    std::vector<double> kept;
    for (Index x : rest) kept.push_back(u.values(x));
    const double beta = kind.tag == GradientKind::Hajlasz ? kind.beta : u.beta;
    const double kappa_rest = holder_constant_on(space, rest, kept, beta);
    const Eigen::VectorXd v = mcshane_extend(space, rest, kept, kappa_rest, beta).values;
    const double kappa = holder_constant(space, v, beta);
    HolderFunction base = u;
    base.beta = beta;
    const GradientCandidate glued = glue_gradient(space, base, v, e, kappa, grads[k]);
    ++report.d4_checked;
    record("D4", k, kappa, feasibility(space, v, glued));
  }
  return report;
}

}  // namespace sharpmax
