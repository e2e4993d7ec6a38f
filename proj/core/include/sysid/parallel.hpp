#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace sysid {

// Runs fn(i) for i in [0, total). Work items claim indices from a shared
// counter, so fn must be order-independent: per-index seeds and per-index
// output slots keep results identical for every thread count. The first
// exception thrown by a work item is rethrown on the calling thread.
inline void parallel_for(long total, int threads, const std::function<void(long)>& fn) {
  if (total <= 0) return;
  if (threads <= 1 || total == 1) {
    for (long i = 0; i < total; ++i) fn(i);
    return;
  }

  std::atomic<long> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    while (!stop.load(std::memory_order_relaxed)) {
      const long i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= total) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> guard(error_mutex);
        if (!first_error) first_error = std::current_exception();
        stop.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  const int count = static_cast<int>(std::min<long>(threads, total));
  std::vector<std::thread> pool;
  pool.reserve(count);
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace sysid
