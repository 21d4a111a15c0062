#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace rsm {

inline unsigned default_thread_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Splits [begin, end) into `workers` contiguous ranges and runs
/// fn(worker, lo, hi) on each. Range boundaries depend only on the extent
/// and worker count, so per-worker accumulators can be reduced in worker
/// order for results independent of scheduling.
inline void parallel_for(std::size_t begin, std::size_t end, unsigned workers,
                         const std::function<void(unsigned, std::size_t, std::size_t)>& fn) {
  const std::size_t n = end - begin;
  if (n == 0) return;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (workers == 1) {
    fn(0, begin, end);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = begin + static_cast<std::size_t>(w) * chunk;
    const std::size_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, w, lo, hi] { fn(w, lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace rsm
