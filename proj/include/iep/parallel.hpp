#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

namespace iep {

/// std::thread::hardware_concurrency with a floor of 1.
inline unsigned default_workers() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

/// Evaluates fn(i) for i in [0, count) on `workers` threads and hands each
/// result to sink(i, result) on the calling thread in increasing i. Workers
/// run at most a bounded window ahead of the sink. The first exception from
/// fn or sink stops the pool and is rethrown.
template <typename Fn, typename Sink>
void ordered_parallel_for(std::size_t count, unsigned workers, Fn&& fn, Sink&& sink) {
  using Result = std::invoke_result_t<Fn&, std::size_t>;
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) sink(i, fn(i));
    return;
  }
  const std::size_t window = 8 * static_cast<std::size_t>(workers) + 32;
  std::mutex mu;
  std::condition_variable cv;
  std::map<std::size_t, Result> ready;
  std::size_t next_claim = 0;
  std::size_t delivered = 0;
  bool abort = false;
  std::exception_ptr error;

  auto work = [&] {
    for (;;) {
      std::size_t i = 0;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return abort || next_claim >= count || next_claim < delivered + window; });
        if (abort || next_claim >= count) return;
        i = next_claim++;
      }
      try {
        Result r = fn(i);
        std::lock_guard lock(mu);
        ready.emplace(i, std::move(r));
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        abort = true;
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);

  for (std::size_t i = 0; i < count; ++i) {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return abort || ready.count(i) != 0; });
    if (abort) break;
    auto node = ready.extract(i);
    ++delivered;
    lock.unlock();
    cv.notify_all();
    try {
      sink(i, std::move(node.mapped()));
    } catch (...) {
      std::lock_guard relock(mu);
      if (!error) error = std::current_exception();
      abort = true;
      cv.notify_all();
      break;
    }
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace iep
