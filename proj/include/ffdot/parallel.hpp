#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace ffdot {

// Run fn(i) for i in [0, n). fn(i) must touch only state owned by index i
// (trial results are collected into preallocated slots), so the output is
// identical for every thread count, including 1.
template <class Fn>
void parallel_for_index(int64_t n, int threads, Fn&& fn) {
  if (threads <= 0) {
    unsigned hw = std::thread::hardware_concurrency();
    threads = hw == 0 ? 1 : int(hw);
  }
  if (threads > n) threads = int(n < 1 ? 1 : n);
  if (threads <= 1 || n < 2) {
    for (int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(size_t(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (int64_t i = t; i < n; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace ffdot
