#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace young {

inline int resolve_threads(int requested) noexcept {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(task) for task in [0, tasks) on up to `threads` workers and returns
/// the results indexed by task. Work distribution is dynamic but results are
/// positional, so any in-order reduction over them is independent of the
/// thread count. The first exception thrown by a task is rethrown.
template <class Fn>
auto parallel_tasks(std::size_t tasks, int threads, Fn&& fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> results(tasks);
  const auto workers = static_cast<std::size_t>(std::max(1, std::min<int>(resolve_threads(threads),
                                                                         static_cast<int>(tasks))));
  if (workers <= 1) {
    for (std::size_t t = 0; t < tasks; ++t) results[t] = fn(t);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks) return;
      try {
        results[t] = fn(t);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(tasks);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return results;
}

/// Splits [0, count) into fixed-size chunks (independent of thread count),
/// maps each chunk with fn(begin, end) and folds the chunk results in order
/// with merge(acc, chunk_result).
template <class Fn, class Merge>
auto parallel_chunked_reduce(std::size_t count, std::size_t chunk, int threads, Fn&& fn, Merge&& merge) {
  chunk = std::max<std::size_t>(1, chunk);
  const std::size_t chunks = (count + chunk - 1) / chunk;
  auto parts = parallel_tasks(chunks, threads, [&](std::size_t c) {
    const std::size_t begin = c * chunk;
    return fn(begin, std::min(count, begin + chunk));
  });
  using R = typename decltype(parts)::value_type;
  R acc{};
  for (auto& p : parts) merge(acc, p);
  return acc;
}

}  // namespace young
