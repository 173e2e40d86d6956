#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace geo3ap {

// Runs fn(0) .. fn(shard_count-1) on up to `threads` workers. Shards are
// claimed through an atomic counter; callers must make per-shard state
// independent and merge results themselves, in shard order, so that the
// outcome does not depend on scheduling.
inline void run_shards(int shard_count, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || shard_count <= 1) {
    for (int s = 0; s < shard_count; ++s) fn(s);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int s = next.fetch_add(1);
      if (s >= shard_count) return;
      fn(s);
    }
  };
  const int nthreads = std::min(threads, shard_count);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

inline int default_thread_count() {
  if (const char* env = std::getenv("GEO3AP_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace geo3ap
