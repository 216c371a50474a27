#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace friclab {

/// Worker count: FRICLAB_THREADS when set, otherwise min(hardware, 8).
inline int thread_count() {
  if (const char* env = std::getenv("FRICLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(hw == 0 ? 1 : (hw > 8 ? 8 : hw));
}

/// Index-parallel map. Each index writes only its own output slot, so the
/// result is independent of the worker count.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  const int workers = thread_count();
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    if (lo >= n) break;
    const std::size_t hi = std::min(n, lo + chunk);
    pool.emplace_back([lo, hi, &f] {
      for (std::size_t i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace friclab
