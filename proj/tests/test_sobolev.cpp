#include "oracles.hpp"

#include "sharpmax/dstruct.hpp"
#include "sharpmax/maximal.hpp"
#include "sharpmax/samples.hpp"
#include "sharpmax/sobolev.hpp"

#include <doctest.h>

using namespace sharpmax;

namespace {

MetricMeasureSpace two_point(double w = 1.0) {
  Eigen::MatrixXd d(2, 2);
  d << 0, 1, 1, 0;
  return MetricMeasureSpace::from_matrix(d, Eigen::VectorXd::Constant(2, w));
}

}  // namespace

TEST_CASE("norm examples") {
  auto half = two_point(0.5);
  for (const auto& kind : {DStructureKind::hajlasz(1.0)}) {
    CHECK(sobolev_norm(half, Eigen::Vector2d(-3, -3), 2.0, kind) == doctest::Approx(3.0));
  }
  CHECK(sharp_norm(half, Eigen::Vector2d(-3, -3), 2.0, 1.0) == doctest::Approx(3.0));

  auto tp = two_point();
  const Eigen::Vector2d u(0, 1);
  CHECK(sobolev_norm(tp, u, 2.0, DStructureKind::hajlasz(1.0)) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-9));
  CHECK(sharp_norm(tp, u, 2.0, 1.0) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-9));
  const auto rep = norm_report(tp, u, 2.0, 1.0, DStructureKind::hajlasz(1.0));
  CHECK(rep.ratio == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.eta == doctest::Approx(1.0));

  const Eigen::Vector2d u2 = 2.0 * u;
  CHECK(sobolev_norm(tp, u2, 2.0, DStructureKind::hajlasz(1.0)) == doctest::Approx(2.0 * std::sqrt(1.5)).epsilon(1e-9));
  CHECK(sharp_norm(tp, u2, 2.0, 1.0) == doctest::Approx(2.0 * std::sqrt(1.5)).epsilon(1e-9));

  // Translation changes only the Lebesgue term.
  auto p3 = generate_space(SpaceSpec::path(3));
  const Eigen::Vector3d v(0, 1, 2);
  const Eigen::Vector3d w = v.array() + 5.0;
  const double m = lp_norm(p3, sharp_maximal(p3, v, 2.0, 1.0, global_family(p3)).values, 2.0);
  CHECK(std::pow(sharp_norm(p3, w, 2.0, 1.0), 2.0) ==
        doctest::Approx(std::pow(lp_norm(p3, w, 2.0), 2.0) + m * m).epsilon(1e-12));
}

TEST_CASE("constant samples give ratio 1") {
  auto g = generate_space(SpaceSpec::grid(4, 4));
  std::vector<HolderFunction> flat{make_holder(g, Eigen::VectorXd::Constant(16, 2.0), 1.0)};
  for (const auto& kind : {DStructureKind::hajlasz(1.0), DStructureKind::graph_upper()}) {
    const auto rep = norm_equivalence_report(g, flat, 2.0, 1.0, kind);
    CHECK(rep.rows[0].ratio == 1.0);
    CHECK(rep.rows[0].sobolev_norm == doctest::Approx(2.0 * 4.0));
    CHECK(rep.rows[0].eta == 0.0);
  }
}

TEST_CASE("sobolev norm axioms on samples") {
  auto g = generate_space(SpaceSpec::grid(5, 5));
  const auto samples = holder_samples(g, 6, 1.0, 40);
  for (const auto& kind : {DStructureKind::hajlasz(1.0), DStructureKind::graph_upper()}) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& u = samples[i].values;
      const auto& v = samples[(i + 1) % samples.size()].values;
      const double nu = sobolev_norm(g, u, 2.0, kind);
      CHECK(nu >= lp_norm(g, u, 2.0));
      const Eigen::VectorXd mu3 = -3.0 * u;
      CHECK(sobolev_norm(g, mu3, 2.0, kind) == doctest::Approx(3.0 * nu).epsilon(1e-5));
      const Eigen::VectorXd sum = u + v;
      CHECK(sobolev_norm(g, sum, 2.0, kind) <= (nu + sobolev_norm(g, v, 2.0, kind)) * (1.0 + 1e-5));
      const Eigen::VectorXd gsum =
          minimal_gradient(g, u, kind, 2.0).values + minimal_gradient(g, v, kind, 2.0).values;
      CHECK(feasibility(g, sum, gsum, kind).feasible);
    }
  }
}

TEST_CASE("sobolev norm is controlled by eta and the sharp norm") {
  auto g = generate_space(SpaceSpec::grid(6, 6));
  for (const auto& kind : {DStructureKind::hajlasz(1.0), DStructureKind::graph_upper()}) {
    for (const auto& f : holder_samples(g, 5, 1.0, 41)) {
      const auto rep = norm_report(g, f.values, 2.0, 1.0, kind);
      const double m = lp_norm(g, sharp_maximal(g, f.values, 2.0, 1.0, global_family(g)).values, 2.0);
      CHECK(rep.grad_norm <= rep.eta * m * (1.0 + 1e-6));
      CHECK(rep.sobolev_norm <= std::max(1.0, rep.eta) * rep.sharp_norm * (1.0 + 1e-6));
      CHECK(rep.ratio > 0.0);
      CHECK(std::isfinite(rep.ratio));
    }
  }
}

TEST_CASE("norm equivalence spread on grid(8,8)") {
  auto g = generate_space(SpaceSpec::grid(8, 8));
  const auto samples = holder_samples(g, 20, 1.0, 1);
  for (const auto& kind : {DStructureKind::hajlasz(1.0), DStructureKind::graph_upper()}) {
    const auto rep = norm_equivalence_report(g, samples, 2.0, 1.0, kind);
    REQUIRE(rep.rows.size() == 20);
    for (const auto& r : rep.rows) {
      CHECK(std::isfinite(r.ratio));
      CHECK(r.ratio > 0.0);
    }
    MESSAGE(to_string(kind.tag) << ": ratios in [" << rep.min_ratio << ", " << rep.max_ratio << "], spread "
                                << rep.spread);
    CHECK(rep.spread <= 10.0);
  }
}
