#include "oracles.hpp"

#include "sharpmax/covering.hpp"
#include "sharpmax/error.hpp"
#include "sharpmax/maximal.hpp"
#include "sharpmax/samples.hpp"

#include <doctest.h>

#include <random>

using namespace sharpmax;

namespace {

bool disjoint(const Ball& a, const Ball& b) { return !a.intersects(b); }

void check_cover_exact(const MetricMeasureSpace& s, const std::vector<Ball>& balls) {
  const auto sel = five_r_cover(balls);
  REQUIRE(!sel.empty());
  for (std::size_t i = 0; i < sel.size(); ++i)
    for (std::size_t j = i + 1; j < sel.size(); ++j) CHECK(disjoint(balls[sel[i]], balls[sel[j]]));
  for (const Ball& b : balls) {
    bool inside = false;
    for (std::size_t k : sel) inside = inside || b.subset_of(dilate(s, balls[k], 5.0));
    CHECK(inside);
  }
  const auto chk = check_five_r_cover(s, balls, sel);
  CHECK(chk.disjoint);
  CHECK(chk.covers);
}


// Direct evaluation over every canonical ball of the space.
WhitneyProperties whitney_reference(const MetricMeasureSpace& space, const WhitneyCover& cover) {
  WhitneyProperties props;
  const Ball& b0 = cover.base;
  const BallFamily global = global_family(space);
  std::vector<double> out_b0(space.size());
  for (Index c = 0; c < space.size(); ++c) out_b0[c] = distance_to_complement(space, c, b0);
  std::vector<double> out_star(space.size());
  for (const WhitneyCell& cell : cover.cells) {
    for (Index c = 0; c < space.size(); ++c) out_star[c] = distance_to_complement(space, c, cell.q_star);
    const double r_q = cell.q.radius;
    for (const Ball& b : global.balls) {
      if (b.intersects(cell.q) && 2.0 * b.radius > out_star[b.center]) {
        ++props.w3_checked;
        if (b.set_diam < 0.75 * r_q) ++props.w3_violations;
      }
      if (b.radius > out_star[b.center]) continue;
      ++props.w4_checked;
      if (2.0 * b.radius > out_b0[b.center]) ++props.w4_violations;
      if (b.set_diam > 0.0) {
        ++props.w5_checked;
        for (Index x : b.members) {
          if (10.0 * b.set_diam > out_b0[x]) {
            ++props.w5_violations;
            break;
          }
        }
      }
    }
  }
  return props;
}

}  // namespace

TEST_CASE("5r cover examples") {
  auto p5 = generate_space(SpaceSpec::path(5));
  std::vector<Ball> one{ball(p5, 1, 1.5)};
  CHECK(five_r_cover(one) == std::vector<std::size_t>{0});

  std::vector<Ball> three{ball(p5, 2, 2.2), ball(p5, 0, 1.1), ball(p5, 4, 1.1)};
  CHECK(five_r_cover(three) == std::vector<std::size_t>{0});

  std::vector<Ball> two{ball(p5, 0, 1.1), ball(p5, 4, 1.1)};
  CHECK(five_r_cover(two) == std::vector<std::size_t>{0, 1});

  std::vector<Ball> tie{ball(p5, 1, 1.5), ball(p5, 2, 1.5)};
  CHECK(five_r_cover(tie) == std::vector<std::size_t>{0});
}

TEST_CASE("5r cover property on random families") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 80; ++trial) {
    auto s = trial % 2 ? oracle::random_graph_space(rng, 4 + trial % 9) : generate_space(SpaceSpec::grid(5, 4));
    std::vector<Ball> balls;
    const int m = 1 + trial % 12;
    for (int k = 0; k < m; ++k) {
      const Index c = std::uniform_int_distribution<Index>(0, s.size() - 1)(rng);
      const auto radii = canonical_radii(s, c);
      balls.push_back(ball(s, c, radii[std::uniform_int_distribution<std::size_t>(0, radii.size() - 1)(rng)]));
    }
    check_cover_exact(s, balls);
  }
}

TEST_CASE("Whitney cover on path(9)") {
  auto s = generate_space(SpaceSpec::path(9));
  const Ball b0 = ball(s, 4, 3.5);
  const auto cover = whitney_cover(s, b0, 0.125);
  CHECK(cover.cells.size() == b0.members.size());
  for (const auto& cell : cover.cells) {
    CHECK(cell.q.members.size() == 1);
    CHECK(cell.q.radius < 1.0);
    CHECK(cell.q.radius == doctest::Approx(0.125 * (4.0 - std::abs(double(cell.q.center) - 4.0))));
  }
  const auto props = check_whitney_properties(s, cover);
  CHECK(props.w1_uncovered == 0);
  CHECK(props.w2_inside_base);
  CHECK(props.w2_overlap == cover.overlap);
  CHECK(cover.overlap == 3);
}

TEST_CASE("Whitney cover on a fine grid has multi-point cells") {
  auto s = generate_space(SpaceSpec::grid(32, 32, 1.0 / 16.0));
  const Index center = 16 * 32 + 16;
  const Ball b0 = ball(s, center, 1.0);
  const auto cover = whitney_cover(s, b0, 0.125);
  std::size_t biggest = 0;
  for (const auto& cell : cover.cells) biggest = std::max(biggest, cell.q.members.size());
  CHECK(biggest > 1);
  const auto props = check_whitney_properties(s, cover);
  CHECK(props.w1_uncovered == 0);
  CHECK(props.w2_inside_base);
  CHECK(props.w2_overlap == overlap_constant(s, cover));
  MESSAGE("grid(32,32) c_W=1/8: " << cover.cells.size() << " cells, overlap " << cover.overlap);
  CHECK(cover.overlap < 64);
}

TEST_CASE("Whitney degenerate cases") {
  auto s = generate_space(SpaceSpec::path(5));
  const Ball single = ball(s, 2, 0.5);
  const auto cover = whitney_cover(s, single, 0.125);
  REQUIRE(cover.cells.size() == 1);
  CHECK(cover.cells[0].q.members == std::vector<Index>{2});

  const Ball whole = ball(s, 2, 10.0);
  try {
    whitney_cover(s, whole, 0.125);
    FAIL("expected BallIsWholeSpace");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BallIsWholeSpace);
  }
  const auto triv = whitney_or_trivial(s, whole, 0.125);
  CHECK(triv.trivial);
  CHECK(triv.cells.size() == 1);
  CHECK(triv.cells[0].q_star.members == whole.members);
  CHECK_THROWS_AS(whitney_cover(s, single, 0.2), Error);
}

TEST_CASE("Whitney properties (W1)-(W6) on grids") {
  for (const auto& [spec, center, radius] :
       {std::tuple{SpaceSpec::grid(12, 12), Index(6 * 12 + 6), 5.5}, std::tuple{SpaceSpec::grid(9, 7), Index(31), 3.5},
        std::tuple{SpaceSpec::grid(20, 20, 0.25), Index(210), 2.2}}) {
    auto s = generate_space(spec);
    const Ball b0 = ball(s, center, radius);
    const auto fine = whitney_cover(s, b0);
    const auto pp = check_whitney_properties(s, fine);
    CHECK(pp.w1_uncovered == 0);
    CHECK(pp.w2_inside_base);
    CHECK(pp.w3_violations == 0);
    CHECK(pp.w4_violations == 0);
    CHECK(pp.w5_violations == 0);
    CHECK(pp.w6_violations == 0);
    CHECK(pp.w3_checked + pp.w4_checked + pp.w5_checked + pp.w6_checked > 0);

    const auto coarse = whitney_cover(s, b0, 0.125);
    const auto pc = check_whitney_properties(s, coarse);
    CHECK(pc.w1_uncovered == 0);
    CHECK(pc.w2_inside_base);
    MESSAGE("c_W=1/8 violations W3..W6: " << pc.w3_violations << " " << pc.w4_violations << " "
                                          << pc.w5_violations << " " << pc.w6_violations << ", overlap "
                                          << coarse.overlap);
  }
}

TEST_CASE("chains: examples") {
  auto s = generate_space(SpaceSpec::path(9));
  const Ball b = ball(s, 4, 3.0);
  const auto chain = build_chain(s, b, 2, 1.0, 2.0);
  CHECK(chain.balls.size() <= 4);
  CHECK(chain.balls.front().center == 4);
  CHECK(chain.balls.back().center == 2);
  CHECK(check_chain(s, chain).ok());

  const auto still = build_chain(s, b, 4, 1.0, 2.0);
  for (const Ball& bi : still.balls) CHECK(bi.center == 4);
  CHECK(check_chain(s, still).ok());

  const auto wide = build_chain(s, b, 2, 2.0, 2.0);
  CHECK(wide.balls.front().radius == doctest::Approx(0.5 * chain.balls.front().radius));
}

TEST_CASE("chains: errors") {
  Eigen::MatrixXd d(3, 3);
  d << 0, 1, 10, 1, 0, 10, 10, 10, 0;
  auto s = MetricMeasureSpace::from_matrix(d, Eigen::VectorXd::Ones(3));
  try {
    build_chain(s, ball(s, 0, 20.0), 2, 1.0, 2.0);
    FAIL("expected NotQuasiGeodesic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotQuasiGeodesic);
  }
  auto p = generate_space(SpaceSpec::path(9));
  try {
    build_chain(p, ball(p, 4, 2.0), 0, 1.0, 2.0);
    FAIL("expected PointOutsideBall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PointOutsideBall);
  }
}

TEST_CASE("chains: properties on quasi-geodesic spaces") {
  std::size_t built = 0;
  for (const auto& spec : {SpaceSpec::path(17), SpaceSpec::grid(7, 7), SpaceSpec::cycle(12)}) {
    auto s = generate_space(spec);
    const double defect = geodesic_defect(s);
    for (Index c = 0; c < s.size(); c += 4) {
      for (double r : {2.5, 4.0}) {
        const Ball b = ball(s, c, r);
        for (Index x : b.members) {
          for (double a : {2.0, 3.0}) {
            const auto chain = build_chain(s, b, x, 1.0, a, defect);
            ++built;
            const auto chk = check_chain(s, chain);
            CHECK(chk.ok());
            CHECK(std::isfinite(chain.M));
            CHECK(chain.balls.back().center == x);
          }
        }
      }
    }
  }
  CHECK(built > 100);
}

TEST_CASE("stopping construction: examples") {
  auto p3 = generate_space(SpaceSpec::path(3));
  const Eigen::Vector3d u(0, 1, 2);
  const auto cover = trivial_cover(p3, ball(p3, 1, 5.0));
  const auto fam = stopping_family(p3, cover, 0, 0.3, u, 2.0, 1.0);
  CHECK(fam.lambda_q == doctest::Approx(std::sqrt(1.0 / 6.0)));
  REQUIRE(fam.balls.size() == 1);
  CHECK(fam.balls[0].ball.members == std::vector<Index>{0, 1, 2});

  CHECK(stopping_family(p3, cover, 0, 0.6, u, 2.0, 1.0).balls.empty());
  CHECK(stopping_family(p3, cover, 0, 0.1, Eigen::Vector3d::Constant(2.0), 2.0, 1.0).balls.empty());

  try {
    stopping_family(p3, cover, 0, 0.2, u, 2.0, 1.0);
    FAIL("expected LevelBelowThreshold");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LevelBelowThreshold);
  }
}

TEST_CASE("stopping construction: sandwich and parent bounds on grids") {
  auto s = generate_space(SpaceSpec::grid(12, 12));
  const double c = doubling_constant(s);
  const Ball b0 = ball(s, 6 * 12 + 6, 5.5);
  const auto cover = whitney_cover(s, b0, 0.125);
  const auto samples = holder_samples(s, 3, 1.0, 19);
  const double p = 2.0;
  std::size_t balls_seen = 0, steps_seen = 0;
  for (const auto& f : samples) {
    for (std::size_t q = 0; q < cover.cells.size(); ++q) {
      const auto& cell = cover.cells[q];
      if (cell.q_star.members.size() < 2) continue;
      const double lq = normalized_oscillation(s, f.values, cell.q_star, p, 1.0);
      if (lq == 0.0) continue;
      const auto local = whitney_local_family(s, cell.q_star);
      const auto prof = sharp_maximal(s, f.values, p, 1.0, local);
      for (double lambda : {0.75 * lq, 1.0 * lq, 1.5 * lq}) {
        const auto fam = stopping_family(s, cover, q, lambda, f.values, p, 1.0);
        const auto upper = level_set(prof, lambda, cell.q_star.members);
        std::vector<Ball> picked;
        for (const auto& sb : fam.balls) {
          ++balls_seen;
          picked.push_back(sb.ball);
          CHECK(sb.oscillation > lambda);
          CHECK(sb.oscillation == doctest::Approx(normalized_oscillation(s, f.values, sb.ball, p, 1.0)));
          CHECK(sb.oscillation <= 2.0 * 32.0 * std::pow(c, 5.0 / p) * lambda);
          CHECK(sb.ball.subset_of(cell.q_star));
          for (Index x : sb.ball.members)
            CHECK(std::binary_search(upper.members.begin(), upper.members.end(), x));
        }
        for (std::size_t i = 0; i < picked.size(); ++i)
          for (std::size_t j = i + 1; j < picked.size(); ++j) CHECK(disjoint(picked[i], picked[j]));
        for (Index x : fam.level_points) {
          bool hit = false;
          for (const Ball& b : picked) hit = hit || dilate(s, b, 5.0).contains(x);
          CHECK(hit);
        }
        for (const auto& st : fam.steps) {
          ++steps_seen;
          CHECK(st.parent_measure <= std::pow(c, 5.0) * st.child_measure);
          CHECK(st.parent_diam <= 16.0 * st.child_diam + 2.0 * s.mesh());
        }
      }
    }
  }
  CHECK(balls_seen > 0);
  MESSAGE("stopping balls " << balls_seen << ", parent steps " << steps_seen);
}

TEST_CASE("Whitney property counts agree with direct evaluation") {
  for (const auto& [spec, center, radius] :
       {std::tuple{SpaceSpec::grid(9, 9), Index(40), 3.5}, std::tuple{SpaceSpec::grid(14, 10, 0.5), Index(75), 2.6},
        std::tuple{SpaceSpec::path(15), Index(7), 6.5}}) {
    auto s = generate_space(spec);
    const Ball b0 = ball(s, center, radius);
    for (double cw : {1.0 / 128.0, 1.0 / 8.0}) {
      const auto cover = whitney_cover(s, b0, cw);
      const auto fast = check_whitney_properties(s, cover);
      const auto ref = whitney_reference(s, cover);
      CHECK(fast.w3_checked == ref.w3_checked);
      CHECK(fast.w3_violations == ref.w3_violations);
      CHECK(fast.w4_checked == ref.w4_checked);
      CHECK(fast.w4_violations == ref.w4_violations);
      CHECK(fast.w5_checked == ref.w5_checked);
      CHECK(fast.w5_violations == ref.w5_violations);
    }
  }
}
