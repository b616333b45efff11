#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace astopo {

/// Fixed partition of [0, items) into contiguous chunks. The partition depends
/// only on the item count, never on the worker count, so per-chunk partial
/// results combined in chunk order are reproducible bit for bit.
struct ChunkPlan {
  std::size_t items = 0;
  std::size_t chunks = 0;

  static ChunkPlan for_items(std::size_t items, std::size_t max_chunks = 64) {
    return {items, std::min(items, max_chunks)};
  }

  std::size_t begin(std::size_t c) const { return items * c / chunks; }
  std::size_t end(std::size_t c) const { return items * (c + 1) / chunks; }
};

/// Runs fn(chunk, begin, end) for every chunk of the plan on up to `workers`
/// threads. The first exception thrown by any chunk is rethrown.
template <class Fn>
void for_each_chunk(const ChunkPlan& plan, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || plan.chunks <= 1) {
    for (std::size_t c = 0; c < plan.chunks; ++c) fn(c, plan.begin(c), plan.end(c));
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t c; (c = next.fetch_add(1)) < plan.chunks;) {
      try {
        fn(c, plan.begin(c), plan.end(c));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  const auto count = std::min<std::size_t>(workers, plan.chunks);
  for (std::size_t w = 1; w < count; ++w) pool.emplace_back(run);
  run();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace astopo
