#ifndef UPSHARP_PARALLEL_HPP
#define UPSHARP_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace upsharp {

/// Worker count from UPSHARP_WORKERS, else 1.
int workers_from_env();

/**
 * Runs job(i) for i in [0, n) on up to `workers` threads. Each job must
 * write only its own output slot; the first exception is rethrown after
 * every thread has joined.
 */
inline void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& job) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex guard;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(guard);
        if (!first) first = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  for (std::size_t w = 0; w < count; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

}  // namespace upsharp

#endif  // UPSHARP_PARALLEL_HPP
