#include "sharpmax/covering.hpp"

#include "sharpmax/error.hpp"
#include "sharpmax/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace sharpmax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_whole_space(const MetricMeasureSpace& space, const Ball& b) {
  return static_cast<Index>(b.members.size()) == space.size();
}

}  // namespace

// ---------------------------------------------------------------------------
// 5r covering

std::vector<std::size_t> five_r_cover(std::span<const Ball> balls) {
  std::vector<std::size_t> order(balls.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return balls[a].radius > balls[b].radius; });
  std::vector<std::size_t> selected;
  for (std::size_t idx : order) {
    const bool clashes = std::any_of(selected.begin(), selected.end(),
                                     [&](std::size_t s) { return balls[s].intersects(balls[idx]); });
    if (!clashes) selected.push_back(idx);
  }
  return selected;
}

CoverCheck check_five_r_cover(const MetricMeasureSpace& space, std::span<const Ball> balls,
                              std::span<const std::size_t> selected) {
  CoverCheck check;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    for (std::size_t j = i + 1; j < selected.size(); ++j) {
      if (balls[selected[i]].intersects(balls[selected[j]])) check.disjoint = false;
    }
  }
  std::vector<Ball> dilated;
  dilated.reserve(selected.size());
  for (std::size_t s : selected) dilated.push_back(dilate(space, balls[s], 5.0));
  for (const Ball& b : balls) {
    const bool inside = std::any_of(dilated.begin(), dilated.end(), [&](const Ball& big) { return b.subset_of(big); });
    if (!inside) check.covers = false;
  }
  return check;
}

// ---------------------------------------------------------------------------
// Whitney covers

int overlap_constant(const MetricMeasureSpace& space, const WhitneyCover& cover) {
  std::vector<int> count(space.size(), 0);
  for (const WhitneyCell& cell : cover.cells) {
    for (Index x : cell.q_star.members) ++count[x];
  }
  return count.empty() ? 0 : *std::max_element(count.begin(), count.end());
}

WhitneyCover whitney_cover(const MetricMeasureSpace& space, const Ball& base, double c_w) {
  if (is_whole_space(space, base)) {
    throw Error(ErrorCode::BallIsWholeSpace, "B0 is the whole space; use the trivial cover {B0}");
  }
  if (!(c_w > 0.0 && c_w <= 0.125)) throw Error(ErrorCode::InvalidArgument, "Whitney ratio must lie in (0, 1/8]");

  std::vector<WhitneyCell> all;
  all.reserve(base.members.size());
  for (Index x : base.members) {
    WhitneyCell cell;
    cell.boundary_distance = distance_to_complement(space, x, base);
    const double r = c_w * cell.boundary_distance;
    cell.q = ball(space, x, r);
    cell.q_star = ball(space, x, 4.0 * r);
    all.push_back(std::move(cell));
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const WhitneyCell& a, const WhitneyCell& b) { return a.q.radius > b.q.radius; });

  WhitneyCover cover;
  cover.base = base;
  cover.c_w = c_w;
  std::vector<char> covered(space.size(), 0);
  for (auto& cell : all) {
    const bool useful = std::any_of(cell.q.members.begin(), cell.q.members.end(), [&](Index y) { return !covered[y]; });
    if (!useful) continue;
    for (Index y : cell.q.members) covered[y] = 1;
    cover.cells.push_back(std::move(cell));
  }
  cover.overlap = overlap_constant(space, cover);
  return cover;
}

WhitneyCover trivial_cover(const MetricMeasureSpace& space, const Ball& base) {
  WhitneyCover cover;
  cover.base = base;
  cover.trivial = true;
  WhitneyCell cell;
  cell.q = base;
  cell.q_star = base;
  cell.boundary_distance = kInf;
  cover.cells.push_back(std::move(cell));
  cover.overlap = overlap_constant(space, cover);
  return cover;
}

WhitneyCover whitney_or_trivial(const MetricMeasureSpace& space, const Ball& base, double c_w) {
  return is_whole_space(space, base) ? trivial_cover(space, base) : whitney_cover(space, base, c_w);
}

WhitneyProperties check_whitney_properties(const MetricMeasureSpace& space, const WhitneyCover& cover) {
  WhitneyProperties props;
  const Ball& b0 = cover.base;

  std::vector<char> covered(space.size(), 0);
  for (const WhitneyCell& cell : cover.cells) {
    for (Index y : cell.q.members) {
      covered[y] = 1;
      if (!b0.contains(y)) ++props.w1_uncovered;
    }
    if (!cell.q_star.subset_of(b0)) props.w2_inside_base = false;
  }
  for (Index y : b0.members) {
    if (!covered[y]) ++props.w1_uncovered;
  }
  props.w2_overlap = overlap_constant(space, cover);

  const Index n = space.size();
  std::vector<double> out_b0(n);
  for (Index c = 0; c < n; ++c) out_b0[c] = distance_to_complement(space, c, b0);

  // Points sorted by distance from each center; canonical ball k at c is the
  // prefix holding every point within the k-th distinct distance.
  std::vector<std::vector<Index>> order(n);
  std::vector<std::vector<std::size_t>> prefix_end(n);
  std::vector<std::vector<double>> radii(n);
  for (Index c = 0; c < n; ++c) {
    auto& o = order[c];
    o.resize(n);
    std::iota(o.begin(), o.end(), Index{0});
    std::stable_sort(o.begin(), o.end(), [&](Index a, Index b) { return space.d(c, a) < space.d(c, b); });
    for (std::size_t i = 0; i < o.size(); ++i) {
      if (i + 1 == o.size() || space.d(c, o[i + 1]) > space.d(c, o[i])) prefix_end[c].push_back(i + 1);
    }
    radii[c] = canonical_radii(space, c);
  }
  auto prefix_diam = [&](Index c, std::size_t count) {
    double diam = 0.0;
    const auto& o = order[c];
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = i + 1; j < count; ++j) diam = std::max(diam, space.d(o[i], o[j]));
    return diam;
  };
  // diam < bound, using ecc <= diam <= 2 ecc before the exact computation.
  auto diam_below = [&](Index c, std::size_t k, double bound) {
    const double ecc = space.d(c, order[c][prefix_end[c][k] - 1]);
    if (ecc >= bound) return false;
    if (2.0 * ecc < bound) return true;
    return prefix_diam(c, prefix_end[c][k]) < bound;
  };

  std::vector<char> in_star(n, 0);
  for (const WhitneyCell& cell : cover.cells) {
    for (Index y : cell.q_star.members) in_star[y] = 1;
    const double r_q = cell.q.radius;
    for (Index c = 0; c < n; ++c) {
      double out_star = std::numeric_limits<double>::infinity();
      for (Index y : order[c]) {
        if (!in_star[y]) {
          out_star = space.d(c, y);
          break;
        }
      }
      double to_q = std::numeric_limits<double>::infinity();
      for (Index y : cell.q.members) to_q = std::min(to_q, space.d(c, y));

      const auto& rk = radii[c];
      // (W3): B meets Q and 2B leaves Q*.
      for (std::size_t k = 0; k < rk.size(); ++k) {
        if (!(rk[k] > to_q && 2.0 * rk[k] > out_star)) continue;
        if (!diam_below(c, k, 0.75 * r_q)) {
          props.w3_checked += rk.size() - k;
          break;
        }
        ++props.w3_checked;
        ++props.w3_violations;
      }
      // (W4), (W5) for canonical balls inside Q*.
      double min_out = std::numeric_limits<double>::infinity();
      std::size_t seen = 0;
      for (std::size_t k = 0; k < rk.size() && rk[k] <= out_star; ++k) {
        for (; seen < prefix_end[c][k]; ++seen) min_out = std::min(min_out, out_b0[order[c][seen]]);
        ++props.w4_checked;
        if (2.0 * rk[k] > out_b0[c]) ++props.w4_violations;
        if (k == 0) continue;
        ++props.w5_checked;
        const double ecc = space.d(c, order[c][prefix_end[c][k] - 1]);
        if (10.0 * ecc > min_out || (20.0 * ecc > min_out && 10.0 * prefix_diam(c, prefix_end[c][k]) > min_out)) {
          ++props.w5_violations;
        }
      }
    }
    for (Index y : cell.q_star.members) in_star[y] = 0;
    // (W6): B(x, r) in the localized family for x in Q* and r <= 2 diam(Q*).
    if (cell.q_star.set_diam > 0.0) {
      for (Index x : cell.q_star.members) {
        ++props.w6_checked;
        if (4.0 * cell.q_star.set_diam > out_b0[x]) ++props.w6_violations;
      }
    }
  }
  return props;
}

// ---------------------------------------------------------------------------
// Chains

namespace {

// Link ball inside I = B_i and B_{i+1} minimizing the dilation that covers both.
std::pair<Ball, double> best_link(const MetricMeasureSpace& space, const Ball& first, const Ball& second) {
  std::vector<Index> meet;
  std::set_intersection(first.members.begin(), first.members.end(), second.members.begin(), second.members.end(),
                        std::back_inserter(meet));
  std::vector<Index> join;
  std::set_union(first.members.begin(), first.members.end(), second.members.begin(), second.members.end(),
                 std::back_inserter(join));
  Ball meet_set;
  meet_set.members = meet;

  Ball best;
  double best_m = kInf;
  for (Index z : meet) {
    const double rho = std::min(distance_to_complement(space, z, meet_set), std::max(first.radius, second.radius));
    double reach = 0.0;
    for (Index y : join) reach = std::max(reach, space.d(z, y));
    const double m = reach == 0.0 ? 1.0 : reach / rho * (1.0 + 1e-9);
    if (m < best_m) {
      best_m = m;
      best = ball(space, z, rho);
    }
  }
  return {best, best_m};
}

}  // namespace

Chain build_chain(const MetricMeasureSpace& space, const Ball& b, Index x, double tau, double a,
                  std::optional<double> geo_defect) {
  if (!(tau >= 1.0)) throw Error(ErrorCode::InvalidArgument, "tau must be at least 1");
  if (!(a > 1.0)) throw Error(ErrorCode::InvalidArgument, "a must exceed 1");
  if (x < 0 || x >= space.size()) throw Error(ErrorCode::InvalidIndex, "chain target " + std::to_string(x));
  if (!b.contains(x)) throw Error(ErrorCode::PointOutsideBall, "target " + std::to_string(x) + " is not in B");
  const double defect = geo_defect ? *geo_defect : geodesic_defect(space);
  if (defect > space.mesh() + kMetricTolerance) {
    throw Error(ErrorCode::NotQuasiGeodesic, "geodesic defect exceeds the mesh");
  }

  Chain chain;
  chain.target = x;
  chain.base = b;
  chain.tau = tau;
  chain.a = a;

  const Index c = b.center;
  const double diam = b.set_diam;
  const double r0 = diam > 0.0 ? diam / (4.0 * tau) : b.radius / (2.0 * tau);
  const double half_mesh = 0.5 * space.mesh();
  // Remaining distance to x is kept near kappa times the radius; kappa >= tau keeps
  // tau B_i inside B, kappa < a/(a-1) lets consecutive centers stay inside the
  // previous ball.
  const double kappa_hi = a / (a - 1.0);
  const double kappa = kappa_hi > tau ? 0.5 * (tau + kappa_hi) : tau;

  const auto path = shortest_path(space, c, x);
  const double total = space.d(c, x);
  auto admissible = [&](Index z) { return distance_to_complement(space, z, b) / tau; };

  chain.balls.push_back(ball(space, c, std::min(r0, admissible(c))));
  std::size_t k = 0;
  double rho = chain.balls.back().radius;
  for (int i = 1; i < 100000; ++i) {
    const double s = r0 * std::pow(a, -i);
    if (path[k] == x) {
      if (rho < half_mesh) break;
      rho = std::min(s, admissible(x));
      chain.balls.push_back(ball(space, x, rho));
      continue;
    }
    const double target = std::min(total, kappa * s);
    std::size_t pick = k;
    bool reached = false;
    for (std::size_t j = k; j < path.size() && space.d(path[k], path[j]) < rho; ++j) {
      pick = j;
      if (space.d(path[j], x) <= target) {
        reached = true;
        break;
      }
    }
    (void)reached;
    const Index z = path[pick];
    double next = std::min(s, admissible(z));
    if (z != x) {
      const double step = space.d(z, path[pick + 1]);
      if (next <= step) next = std::min(std::nextafter(step, kInf) * (1.0 + 1e-12), admissible(z));
      if (next <= step && pick == k) break;  // cannot advance without leaving B
    }
    chain.balls.push_back(ball(space, z, next));
    k = pick;
    rho = next;
  }

  double m = 1.0;
  if (diam > 0.0) {
    for (std::size_t i = 0; i < chain.balls.size(); ++i) {
      const double nominal = std::pow(a, -static_cast<double>(i)) * diam;
      const double r = chain.balls[i].radius;
      m = std::max(m, std::max(r / nominal, nominal / r) * (1.0 + 1e-9));
    }
  }
  for (std::size_t i = 0; i + 1 < chain.balls.size(); ++i) {
    auto [link, lm] = best_link(space, chain.balls[i], chain.balls[i + 1]);
    if (link.members.empty()) {
      // Disjoint consecutive balls; recorded as is so that check_chain reports it.
      link = chain.balls[i + 1];
      lm = kInf;
    }
    chain.links.push_back(std::move(link));
    m = std::max(m, lm);
  }
  chain.M = m;
  return chain;
}

ChainCheck check_chain(const MetricMeasureSpace& space, const Chain& chain) {
  ChainCheck check;
  for (const Ball& bi : chain.balls) {
    if (!ball(space, bi.center, chain.tau * bi.radius).subset_of(chain.base)) check.inside = false;
  }
  check.terminal = !chain.balls.empty() && chain.balls.back().center == chain.target;
  const double diam = chain.base.set_diam;
  if (diam > 0.0) {
    for (std::size_t i = 0; i < chain.balls.size(); ++i) {
      const double nominal = std::pow(chain.a, -static_cast<double>(i)) * diam;
      const double r = chain.balls[i].radius;
      if (r < nominal / chain.M || r > nominal * chain.M) check.radii = false;
    }
  }
  if (chain.links.size() + 1 != chain.balls.size()) check.links = false;
  for (std::size_t i = 0; i < chain.links.size() && i + 1 < chain.balls.size(); ++i) {
    const Ball& link = chain.links[i];
    if (link.members.empty() || !link.subset_of(chain.balls[i]) || !link.subset_of(chain.balls[i + 1])) {
      check.links = false;
      continue;
    }
    if (!std::isfinite(chain.M)) {
      check.links = false;
      continue;
    }
    const Ball big = ball(space, link.center, chain.M * link.radius);
    if (!chain.balls[i].subset_of(big) || !chain.balls[i + 1].subset_of(big)) check.links = false;
  }
  return check;
}

// ---------------------------------------------------------------------------
// Stopping construction

Ball parent_ball(const MetricMeasureSpace& space, const WhitneyCell& cell, const Ball& b) {
  Ball twice = dilate(space, b, 2.0);
  if (twice.subset_of(cell.q_star)) return twice;
  return cell.q_star;
}

StoppingFamily stopping_family(const MetricMeasureSpace& space, const WhitneyCover& cover, std::size_t cell_index,
                               double lambda, const Eigen::VectorXd& u, double p, double beta) {
  if (cell_index >= cover.cells.size()) throw Error(ErrorCode::InvalidIndex, "no such Whitney cell");
  if (!(p > 1.0)) throw Error(ErrorCode::InvalidArgument, "stopping construction needs p > 1");
  const WhitneyCell& cell = cover.cells[cell_index];

  StoppingFamily fam;
  fam.cell = cell_index;
  fam.lambda = lambda;
  fam.lambda_q = normalized_oscillation(space, u, cell.q_star, p, beta);
  if (!(lambda > 0.5 * fam.lambda_q) || !(lambda > 0.0)) {
    throw Error(ErrorCode::LevelBelowThreshold, "level must exceed lambda_Q / 2");
  }

  const BallFamily local = whitney_local_family(space, cell.q_star);
  const MaximalProfile profile = sharp_maximal(space, u, p, beta, local);
  fam.level_points = level_set(profile, lambda, cell.q.members).members;

  std::vector<double> local_osc(local.balls.size());
  for (std::size_t i = 0; i < local.balls.size(); ++i) {
    local_osc[i] = normalized_oscillation(space, u, local.balls[i], p, beta);
  }

  for (Index x : fam.level_points) {
    StoppingBall chosen;
    chosen.seed = x;
    if (lambda < fam.lambda_q) {
      chosen.ball = cell.q_star;
      chosen.oscillation = fam.lambda_q;
      chosen.parent_oscillation = normalized_oscillation(space, u, parent_ball(space, cell, cell.q_star), p, beta);
    } else {
      std::size_t start = local.balls.size();
      for (std::size_t i = 0; i < local.balls.size(); ++i) {
        if (local_osc[i] > lambda && local.balls[i].contains(x) &&
            (start == local.balls.size() || local.balls[i].radius > local.balls[start].radius)) {
          start = i;
        }
      }
      if (start == local.balls.size()) continue;  // x is not a level point after all
      Ball current = local.balls[start];
      double current_osc = local_osc[start];
      for (int guard = 0; guard < 4096; ++guard) {
        Ball parent = parent_ball(space, cell, current);
        const double parent_osc = normalized_oscillation(space, u, parent, p, beta);
        if (current.members.size() > 1) {
          fam.steps.push_back({measure_of(space, current), current.set_diam, measure_of(space, parent),
                               parent.set_diam, current.members.size()});
        }
        if (parent_osc <= lambda) {
          chosen.ball = current;
          chosen.oscillation = current_osc;
          chosen.parent_oscillation = parent_osc;
          break;
        }
        current = std::move(parent);
        current_osc = parent_osc;
      }
    }
    fam.candidates.push_back(std::move(chosen));
  }

  std::vector<Ball> candidate_balls;
  candidate_balls.reserve(fam.candidates.size());
  for (const auto& c : fam.candidates) candidate_balls.push_back(c.ball);
  for (std::size_t idx : five_r_cover(candidate_balls)) fam.balls.push_back(fam.candidates[idx]);
  return fam;
}

}  // namespace sharpmax
