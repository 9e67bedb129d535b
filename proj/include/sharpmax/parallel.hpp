#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace sharpmax::detail {

// Runs body(begin, end) over contiguous chunks of [0, count). The body must only
// write to state owned by its chunk.
template <typename Body>
void parallel_chunks(std::size_t count, Body&& body) {
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, count / 64 + 1);
  if (workers <= 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t step = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * step;
    const std::size_t hi = std::min(count, lo + step);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace sharpmax::detail
