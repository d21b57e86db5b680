#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace tprod::detail {

// Worker count for embarrassingly parallel loops; TPROD_NUM_THREADS overrides
// the single-threaded default.
inline int default_thread_count() {
  if (const char* env = std::getenv("TPROD_NUM_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

// Runs f(i) for i in [begin, end); results must be written to disjoint
// index-addressed slots so the assembly is deterministic.
template <typename F>
void parallel_for(int begin, int end, F&& f, int threads = -1) {
  if (threads < 1) threads = default_thread_count();
  const int count = end - begin;
  if (threads == 1 || count <= 1) {
    for (int i = begin; i < end; ++i) f(i);
    return;
  }
  threads = std::min(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  const int chunk = (count + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const int lo = begin + w * chunk;
    const int hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &f] {
      for (int i = lo; i < hi; ++i) f(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace tprod::detail
