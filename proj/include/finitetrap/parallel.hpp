#ifndef FINITETRAP_PARALLEL_HPP
#define FINITETRAP_PARALLEL_HPP

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace finitetrap {

// Thread budget for grid evaluation. FINITETRAP_THREADS caps it; 0 or unset
// means auto (hardware concurrency).
inline int thread_budget() {
  int budget = 0;
  if (const char* env = std::getenv("FINITETRAP_THREADS")) {
    budget = std::atoi(env);
  }
  if (budget <= 0) {
    budget = static_cast<int>(std::thread::hardware_concurrency());
  }
  return std::clamp(budget, 1, 256);
}

// Runs fn(row) for row = 0..n_rows-1, statically partitioned. Each row must
// be independent; results are identical to a serial loop regardless of the
// partitioning.
inline void parallel_rows(int n_rows, const std::function<void(int)>& fn) {
  const int threads = std::min(thread_budget(), std::max(n_rows, 1));
  if (threads <= 1 || n_rows <= 1) {
    for (int r = 0; r < n_rows; ++r) fn(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([=, &fn] {
      for (int r = t; r < n_rows; r += threads) fn(r);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace finitetrap

#endif  // FINITETRAP_PARALLEL_HPP
