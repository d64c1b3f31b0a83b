#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace raysplit {

/// Splits [0, count) into `threads` contiguous chunks and runs
/// fn(begin, end) on each. Chunks are disjoint, so callers that write only
/// to their own slice get results independent of the thread count.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    fn(std::size_t{0}, count);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t begin = 0; begin < count; begin += chunk) {
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
}

}  // namespace raysplit
