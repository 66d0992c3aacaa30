#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace aerogen {

// Runs fn(0..n-1) on up to `workers` threads. Work items must be independent;
// the first exception wins and is rethrown after all threads join.
inline void parallel_for(int64_t n, int workers,
                         const std::function<void(int64_t)>& fn) {
  if (n <= 0) return;
  if (workers <= 1 || n == 1) {
    for (int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const int count = static_cast<int>(std::min<int64_t>(workers, n));
  std::atomic<int64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(count);
  for (int t = 0; t < count; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const int64_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace aerogen
