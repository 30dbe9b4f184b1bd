#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace cubelab {

/// Worker count: CUBELAB_THREADS if set, else hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("CUBELAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// Splits [0, n) into contiguous chunks, runs `body(chunk, begin, end)` on a
/// pool, then `merge(chunk)` sequentially in chunk order. Reductions stay
/// deterministic because the merge order is fixed regardless of scheduling.
template <typename Body, typename Merge>
void parallel_chunks(uint64_t n, Body body, Merge merge) {
  const unsigned workers = worker_count();
  if (workers <= 1 || n < 2048) {
    body(0, 0, n);
    merge(0);
    return;
  }
  const unsigned chunks = workers;
  const uint64_t step = (n + chunks - 1) / chunks;
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  for (unsigned c = 0; c < chunks; ++c) {
    const uint64_t b = c * step;
    const uint64_t e = std::min(n, b + step);
    if (b >= e) break;
    pool.emplace_back([&body, c, b, e] { body(c, b, e); });
  }
  for (auto& t : pool) t.join();
  for (unsigned c = 0; c < chunks; ++c) merge(c);
}

}  // namespace cubelab
