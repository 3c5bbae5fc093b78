#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace twistlab {

// Run fn(i) for i in [0, n) on up to `jobs` worker threads.  Results must be
// written to disjoint slots; the iteration order is unspecified.
template <typename F>
void parallel_for(int jobs, long long n, F&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (long long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<long long> next{0};
  auto worker = [&] {
    while (true) {
      long long i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  int count = std::min<long long>(jobs, n);
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace twistlab
