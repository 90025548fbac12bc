#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dichot {

/// Runs body(i) for i in [0, count) on up to `jobs` threads (0 means the
/// hardware concurrency). Indices are handed out dynamically; callers write
/// results into per-index slots and reduce them in index order, which keeps
/// every result independent of scheduling. The first exception thrown by any
/// body is rethrown on the calling thread.
template <class Body> void parallel_for(std::size_t count, unsigned jobs, Body &&body) {
  if (jobs == 0)
    jobs = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count)
        return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back(run);
  pool.clear();
  if (error)
    std::rethrow_exception(error);
}

} // namespace dichot
