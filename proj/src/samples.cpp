#include "sharpmax/samples.hpp"

#include "sharpmax/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sharpmax {

std::vector<HolderFunction> holder_samples(const MetricMeasureSpace& space, std::size_t count, double beta,
                                           std::uint64_t seed) {
  require_beta(beta);
  const Index n = space.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> point(0, n - 1);
  std::uniform_int_distribution<int> anchors(1, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double height = std::pow(space.diameter(), beta);

  std::vector<HolderFunction> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const bool lower = k % 2 == 0;
    const int m = anchors(rng);
    const double slope = 0.5 + 0.5 * unit(rng);
    Eigen::VectorXd values = Eigen::VectorXd::Constant(n, lower ? 1e300 : -1e300);
    for (int j = 0; j < m; ++j) {
      const Index y = point(rng);
      const double a = 0.5 * height * unit(rng);
      for (Index x = 0; x < n; ++x) {
        const double cone = std::pow(space.d(x, y), beta);
        values(x) = lower ? std::min(values(x), a + cone) : std::max(values(x), a - cone);
      }
    }
    values *= slope;
    out.push_back(make_holder(space, std::move(values), beta));
  }
  return out;
}

HolderFunction tree_split(const MetricMeasureSpace& space) {
  const Index n = space.size();
  if (n < 3) throw Error(ErrorCode::SizeTooSmall, "tree split needs a root with two children");
  Eigen::VectorXd values = Eigen::VectorXd::Zero(n);
  for (Index x = 1; x < n; ++x) {
    Index y = x;
    while (y > 2) y = (y - 1) / 2;
    values(x) = y == 1 ? 1.0 : -1.0;
  }
  return make_holder(space, std::move(values), 1.0);
}

}  // namespace sharpmax
