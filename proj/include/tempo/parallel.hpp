#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace tempo {

// Runs fn(i) for i in [0, count) across up to `jobs` threads. Work items are
// handed out through a shared counter; callers make runs deterministic by
// writing results into preallocated slots indexed by i, never by arrival
// order. The first exception thrown by any worker is rethrown here.
inline void parallel_for_index(std::size_t count, int jobs,
                               const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  const auto hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      std::min<std::size_t>(count, jobs > 0 ? static_cast<std::size_t>(jobs) : hw);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          break;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace tempo
