#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include <Eigen/Core>

namespace biharm {

/// Runs body(i) for i in [0, count), splitting the range into contiguous
/// blocks, one per worker. Iterations must be independent; results then do
/// not depend on the worker count. The first exception thrown by a worker is
/// rethrown on the calling thread after all workers have joined.
inline void parallel_for(Eigen::Index count, int workers, const std::function<void(Eigen::Index)>& body) {
  const int w = static_cast<int>(std::max<Eigen::Index>(1, std::min<Eigen::Index>(workers, count)));
  if (w == 1) {
    for (Eigen::Index i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(w));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(w));
  const Eigen::Index chunk = (count + w - 1) / w;
  for (int t = 0; t < w; ++t) {
    const Eigen::Index lo = t * chunk;
    const Eigen::Index hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, &errors, t, lo, hi] {
      try {
        for (Eigen::Index i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace biharm
