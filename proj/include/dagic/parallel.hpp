#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dagic {

inline std::size_t resolve_workers(std::size_t requested) noexcept {
  if (requested != 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Runs fn(item, worker) for item in [0, count). Items are handed out in
/// chunks from a shared counter; callers write results to per-item slots so
/// the output does not depend on scheduling. The first exception thrown by
/// any worker is rethrown after all workers stop.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn, std::size_t chunk = 8) {
  workers = std::min(resolve_workers(workers), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i, std::size_t{0});
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (;;) {
            const std::size_t begin = next.fetch_add(chunk);
            if (begin >= count) return;
            const std::size_t end = std::min(count, begin + chunk);
            for (std::size_t i = begin; i < end; ++i) fn(i, w);
          }
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(count);
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace dagic
