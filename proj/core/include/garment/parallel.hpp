#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace garment {

inline unsigned default_thread_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : std::min(hw, 8u);
}

// Runs run(first, last, slot) over contiguous blocks of [0, count), one block
// per worker; slot identifies the worker for deterministic reductions.
inline void parallel_blocks(int count, unsigned threads,
                            const std::function<void(int, int, unsigned)>& run) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max(count, 1))));
  if (threads == 1 || count <= 1) {
    run(0, count, 0);
    return;
  }
  std::vector<std::thread> pool;
  const int chunk = (count + static_cast<int>(threads) - 1) / static_cast<int>(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const int lo = static_cast<int>(t) * chunk;
    const int hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([=, &run] { run(lo, hi, t); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace garment
