#include "oracles.hpp"

#include "sharpmax/dstruct.hpp"
#include "sharpmax/error.hpp"
#include "sharpmax/maximal.hpp"
#include "sharpmax/poincare.hpp"
#include "sharpmax/samples.hpp"

#include <doctest.h>

#include <random>

using namespace sharpmax;

namespace {

MetricMeasureSpace two_point() {
  Eigen::MatrixXd d(2, 2);
  d << 0, 1, 1, 0;
  return MetricMeasureSpace::from_matrix(d, Eigen::VectorXd::Ones(2));
}

// Direct evaluation of the Poincaré ratio over every distinct ball.
double poincare_bruteforce(const MetricMeasureSpace& s, const Eigen::VectorXd& u, const Eigen::VectorXd& g,
                           const PIParams& pi) {
  double k = 0.0;
  for (Index c = 0; c < s.size(); ++c) {
    for (const Ball& b : canonical_balls(s, c)) {
      if (b.set_diam == 0.0) continue;
      double mu = 0.0, mean = 0.0;
      for (Index x : b.members) {
        mu += s.measure()(x);
        mean += s.measure()(x) * u(x);
      }
      mean /= mu;
      double osc = 0.0;
      for (Index x : b.members) osc += s.measure()(x) * std::pow(std::abs(u(x) - mean), pi.q);
      osc = std::pow(osc / mu, 1.0 / pi.q);
      double mw = 0.0, gw = 0.0;
      for (Index x : oracle::members(s, c, pi.tau * b.radius)) {
        mw += s.measure()(x);
        gw += s.measure()(x) * std::pow(g(x), pi.p);
      }
      const double right = std::pow(b.set_diam, pi.beta) * std::pow(gw / mw, 1.0 / pi.p);
      if (right == 0.0) continue;
      k = std::max(k, std::pow(osc / right, pi.p));
    }
  }
  return k;
}

}  // namespace

TEST_CASE("Poincaré constant examples") {
  auto p3 = generate_space(SpaceSpec::path(3));
  CHECK(poincare_constant(p3, Eigen::Vector3d::Constant(1.0), Eigen::Vector3d::Zero(), {}, global_family(p3)) == 0.0);

  auto tp = two_point();
  const PIParams pp{2.0, 2.0, 1.0, 1.0};
  CHECK(poincare_constant(tp, Eigen::Vector2d(0, 1), Eigen::Vector2d(0.5, 0.5), pp, global_family(tp)) ==
        doctest::Approx(1.0));

  CHECK(std::isinf(
      poincare_constant(tp, Eigen::Vector2d(0, 1), Eigen::Vector2d::Zero(), pp, global_family(tp))));
}

TEST_CASE("Poincaré constant agrees with direct evaluation") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 30; ++t) {
    auto s = oracle::random_graph_space(rng, 3 + t % 7);
    const Eigen::VectorXd u = oracle::random_values(rng, s.size());
    const Eigen::VectorXd g = oracle::random_values(rng, s.size()).cwiseAbs().array() + 0.05;
    const PIParams pi{t % 2 ? 1.0 : 2.0, t % 3 ? 2.0 : 1.5, t % 4 ? 1.0 : 0.5, t % 5 ? 1.0 : 2.0};
    CHECK(poincare_constant(s, u, g, pi, global_family(s)) ==
          doctest::Approx(poincare_bruteforce(s, u, g, pi)).epsilon(1e-12));
  }
}

TEST_CASE("Hajlasz (p,p) constant stays below 2^p") {
  std::vector<MetricMeasureSpace> spaces;
  spaces.push_back(generate_space(SpaceSpec::grid(5, 5)));
  spaces.push_back(generate_space(SpaceSpec::path(10)));
  spaces.push_back(generate_space(SpaceSpec::binary_tree(3)));
  spaces.push_back(generate_space(SpaceSpec::cycle(9)));
  std::mt19937_64 rng(4);
  spaces.push_back(oracle::random_graph_space(rng, 9));
  for (const auto& s : spaces) {
    const auto family = global_family(s);
    for (const auto& f : holder_samples(s, 3, 1.0, 6)) {
      for (double p : {1.5, 2.0, 3.0}) {
        const auto g = minimal_hajlasz_gradient(s, f.values, 1.0, p);
        CHECK(poincare_constant(s, f.values, g, {p, p, 1.0, 1.0}, family) <= std::pow(2.0, p) + 1e-9);
      }
    }
  }
}

TEST_CASE("Poincaré constant invariances") {
  auto s = generate_space(SpaceSpec::grid(5, 4));
  const auto family = global_family(s);
  for (const auto& f : holder_samples(s, 3, 1.0, 9)) {
    const auto g = minimal_hajlasz_gradient(s, f.values, 1.0, 2.0).values;
    for (const PIParams& pi : {PIParams{1.0, 2.0, 1.0, 1.0}, PIParams{2.0, 2.0, 1.0, 2.0}}) {
      const double k = poincare_constant(s, f.values, g, pi, family);
      const Eigen::VectorXd shifted = f.values.array() + 3.5;
      CHECK(poincare_constant(s, shifted, g, pi, family) == doctest::Approx(k).epsilon(1e-12));
      for (double a : {-2.0, 0.5, 3.0}) {
        const Eigen::VectorXd au = a * f.values;
        const Eigen::VectorXd ag = std::abs(a) * g;
        CHECK(poincare_constant(s, au, ag, pi, family) == doctest::Approx(k).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("self-improvement report") {
  auto g8 = generate_space(SpaceSpec::grid(8, 8));
  const auto f = holder_samples(g8, 1, 1.0, 2)[0];
  const auto g = minimal_hajlasz_gradient(g8, f.values, 1.0, 2.0).values;
  const auto rep = self_improvement_report(g8, f.values, g, 2.0, 1.0, 1.0, 3.0);
  CHECK(rep.Q == 3.0);
  CHECK(rep.q_max == doctest::Approx(6.0));
  REQUIRE(rep.table.size() == 3);
  CHECK(rep.table[0].q == 1.0);
  CHECK(rep.table[1].q == doctest::Approx(3.5));
  CHECK(rep.table[2].q == doctest::Approx(5.7));
  for (const auto& row : rep.table) CHECK(std::isfinite(row.k_qp));
  CHECK(rep.jensen_ordered);
  CHECK(rep.table[0].k_qp <= rep.table[1].k_qp);
  CHECK(rep.table[1].k_qp <= rep.table[2].k_qp);

  const auto def = self_improvement_report(g8, f.values, g, 2.0, 1.0, 1.0);
  CHECK(def.Q == doctest::Approx(std::max(std::log2(doubling_constant(g8)), 2.0) + 1.0));

  const auto flat = self_improvement_report(g8, Eigen::VectorXd::Constant(64, 2.0), Eigen::VectorXd::Zero(64), 2.0,
                                            1.0, 1.0, 3.0);
  for (const auto& row : flat.table) CHECK(row.k_qp == 0.0);

  try {
    self_improvement_report(g8, f.values, g, 2.0, 1.0, 1.0, 2.0);
    FAIL("expected ExponentGap");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ExponentGap);
  }
}

TEST_CASE("Jensen ordering in q") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 15; ++t) {
    auto s = oracle::random_graph_space(rng, 4 + t % 6);
    const Eigen::VectorXd u = oracle::random_values(rng, s.size());
    const Eigen::VectorXd g = oracle::random_values(rng, s.size()).cwiseAbs().array() + 0.1;
    const auto family = global_family(s);
    double prev = 0.0;
    for (double q : {1.0, 1.3, 2.0, 3.5, 6.0}) {
      const double k = poincare_constant(s, u, g, {q, 2.0, 1.0, 1.0}, family);
      CHECK(k >= prev * (1.0 - 1e-12));
      prev = k;
    }
  }
}

TEST_CASE("main inequality audit") {
  CHECK(c_k_epsilon(3, 0.0) == 3.0);
  CHECK(c_k_epsilon(2, 0.5) == doctest::Approx(3.0 / 0.5));

  auto g8 = generate_space(SpaceSpec::grid(8, 8));
  const Ball b0 = ball(g8, 4 * 8 + 4, 3.5);
  const auto flat = main_inequality_audit(g8, b0, Eigen::VectorXd::Constant(64, 1.0), Eigen::VectorXd::Zero(64), 2.0,
                                          1.0, {3, 0.1});
  CHECK(flat.lhs == 0.0);
  CHECK(flat.term_gradient == 0.0);
  CHECK(flat.implied_C1 == 0.0);

  for (const auto& f : holder_samples(g8, 3, 1.0, 17)) {
    const auto g = minimal_hajlasz_gradient(g8, f.values, 1.0, 2.0).values;
    const auto rep = main_inequality_audit(g8, b0, f.values, g, 2.0, 1.0, {3, 0.1});
    CHECK(rep.lhs > 0.0);
    CHECK(std::isfinite(rep.implied_C));
    CHECK(std::isfinite(rep.implied_C1));
    CHECK(rep.alpha == doctest::Approx(4.0 / (2.0 * (rep.s + 2.0))));
    CHECK(!rep.empty_family);
    const double absorb = std::pow(2.0, 3 * (0.1 - rep.alpha)) + rep.k_pp * std::pow(4.0, 0.3) / 3.0;
    CHECK(rep.term_absorb == doctest::Approx(absorb));
    CHECK(rep.lhs <= rep.implied_C1 * (rep.term_absorb * rep.lhs + rep.c_k_eps * rep.k_pp * rep.term_gradient) *
                         (1.0 + 1e-12));
    for (double a : {2.0, -3.0}) {
      const Eigen::VectorXd au = a * f.values;
      const Eigen::VectorXd ag = std::abs(a) * g;
      const auto scaled = main_inequality_audit(g8, b0, au, ag, 2.0, 1.0, {3, 0.1});
      const double factor = std::pow(std::abs(a), 2.0 - 0.1);
      CHECK(scaled.lhs == doctest::Approx(factor * rep.lhs).epsilon(1e-9));
      CHECK(scaled.term_gradient == doctest::Approx(factor * rep.term_gradient).epsilon(1e-9));
      CHECK(scaled.implied_C == doctest::Approx(rep.implied_C).epsilon(1e-9));
      CHECK(scaled.implied_C1 == doctest::Approx(rep.implied_C1).epsilon(1e-9));
    }
  }

  const auto tiny = main_inequality_audit(g8, ball(g8, 0, 0.5), Eigen::VectorXd::LinSpaced(64, 0, 1),
                                          Eigen::VectorXd::Ones(64), 2.0, 1.0, {1, 0.0});
  CHECK(tiny.lhs == 0.0);
  try {
    main_inequality_audit(g8, b0, Eigen::VectorXd::Zero(64), Eigen::VectorXd::Zero(64), 2.0, 1.0, {1, 1.0});
    FAIL("expected EpsilonOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EpsilonOutOfRange);
  }
}

TEST_CASE("Keith-Zhong sweep") {
  auto g6 = generate_space(SpaceSpec::grid(6, 6));
  const double eps[] = {0.0, 0.05, 0.1, 0.2};
  std::vector<HolderFunction> flat{make_holder(g6, Eigen::VectorXd::Constant(36, 1.0), 1.0)};
  for (const auto& row : kz_sweep(g6, DStructureKind::hajlasz(1.0), 2.0, 1.0, eps, flat).rows) CHECK(row.max == 0.0);

  const auto samples = holder_samples(g6, 3, 1.0, 30);
  for (const auto& kind : {DStructureKind::hajlasz(1.0), DStructureKind::graph_upper()}) {
    const auto rep = kz_sweep(g6, kind, 2.0, 1.0, eps, samples);
    REQUIRE(rep.rows.size() == 4);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto g = minimal_gradient(g6, samples[i].values, kind, 2.0).values;
      const double k22 = poincare_constant(g6, samples[i].values, g, {2.0, 2.0, 1.0, 2.0}, global_family(g6));
      CHECK(rep.rows[0].constants[i] == doctest::Approx(std::sqrt(k22)).epsilon(1e-9));
      bool mono = true;
      for (std::size_t r = 1; r < rep.rows.size(); ++r)
        mono = mono && rep.rows[r].constants[i] >= rep.rows[r - 1].constants[i] * (1.0 - 1e-12);
      CHECK(rep.monotone[i] == mono);
    }
    for (const auto& row : rep.rows) {
      CHECK(std::isfinite(row.max));
      CHECK(row.max == *std::max_element(row.constants.begin(), row.constants.end()));
    }
  }
}

TEST_CASE("negative control: tree Poincaré constants grow with depth") {
  double prev = 0.0;
  for (Index depth : {3, 5, 7}) {
    auto t = generate_space(SpaceSpec::binary_tree(depth));
    const auto u = tree_split(t);
    const auto g = minimal_upper_gradient(t, u.values, 2.0);
    const double k = poincare_constant(t, u.values, g, {1.0, 2.0, 1.0, 1.0}, global_family(t));
    MESSAGE("binary_tree(" << depth << "): K = " << k);
    CHECK(k > prev);
    prev = k;
  }
}

TEST_CASE("closest half split") {
  auto p9 = generate_space(SpaceSpec::path(9));
  const Ball b = ball(p9, 4, 4.5);
  const std::vector<Index> level{0, 1, 2, 3};
  const auto split = closest_half_split(p9, b, level, 3);
  CHECK(split.ratio == doctest::Approx(0.5));
  const auto one = closest_half_split(p9, b, std::vector<Index>{0}, 0);
  CHECK(one.ratio == doctest::Approx(0.5));
  CHECK(one.radius == doctest::Approx(1.5));
  std::mt19937_64 rng(12);
  auto g = generate_space(SpaceSpec::grid(6, 6));
  const Ball gb = ball(g, 14, 3.5);
  for (int t = 0; t < 20; ++t) {
    std::vector<Index> lv;
    for (Index x : gb.members)
      if (std::bernoulli_distribution(0.4)(rng)) lv.push_back(x);
    const Index x = gb.members[t % gb.members.size()];
    const auto hs = closest_half_split(g, gb, lv, x);
    double best = std::numeric_limits<double>::infinity();
    for (const Ball& small : canonical_balls(g, x)) {
      if (small.radius > gb.set_diam) break;
      double in_u = 0.0, in_b = 0.0;
      for (Index y : small.members) {
        if (!gb.contains(y)) continue;
        in_b += 1.0;
        if (std::find(lv.begin(), lv.end(), y) != lv.end()) in_u += 1.0;
      }
      if (in_b > 0.0) best = std::min(best, std::abs(in_u / in_b - 0.5));
    }
    CHECK(std::abs(hs.ratio - 0.5) == doctest::Approx(best));
  }
}
