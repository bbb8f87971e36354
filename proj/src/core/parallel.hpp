#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace botoc {

// Runs fn(i) for every i in [0, n). Results must depend only on i so that
// the outcome is identical for any thread count. n_threads <= 1 runs inline.
inline void parallel_for(std::uint64_t n, int n_threads,
                         const std::function<void(std::uint64_t)>& fn) {
  if (n == 0) return;
  if (n_threads <= 1 || n == 1) {
    for (std::uint64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::uint64_t workers =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(n_threads), n);
  const std::uint64_t chunk = std::max<std::uint64_t>(1, n / (workers * 8));
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto body = [&]() {
    for (;;) {
      const std::uint64_t start = next.fetch_add(chunk);
      if (start >= n || failed.load(std::memory_order_relaxed)) return;
      const std::uint64_t stop = std::min(start + chunk, n);
      for (std::uint64_t i = start; i < stop; ++i) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
          return;
        }
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace botoc
