#pragma once

#include "sharpmax/holder.hpp"
#include "sharpmax/mmspace.hpp"

#include <cstdint>
#include <vector>

namespace sharpmax {

/// Seeded beta-Hölder functions with constant at most 1, built as minima (even
/// draws) or maxima (odd draws) of cones a_j +- d(x, y_j)^beta around random anchors.
std::vector<HolderFunction> holder_samples(const MetricMeasureSpace& space, std::size_t count, double beta,
                                           std::uint64_t seed);

/// +1 on the left subtree of the root, -1 on the right, 0 at the root
/// (heap-indexed binary trees).
HolderFunction tree_split(const MetricMeasureSpace& space);

}  // namespace sharpmax
