#ifndef SEMIBJ_PARALLEL_HPP
#define SEMIBJ_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace semibj {

/// Worker count: hardware concurrency, optionally capped by the
/// SEMIHILBERT_THREADS environment variable.
inline unsigned thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("SEMIHILBERT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1 && static_cast<unsigned long>(v) < hw)
      hw = static_cast<unsigned>(v);
  }
  return hw;
}

/// Calls f(i) once for every i in [0, count), spread over the thread budget.
/// Each index must own its output slot and f must not throw; results then
/// merge in index order without locking and independently of the schedule.
template <class F>
inline void parallel_for_index(std::size_t count, F&& f, unsigned threads = 0) {
  if (threads == 0) threads = thread_budget();
  if (count == 0) return;
  if (static_cast<std::size_t>(threads) > count)
    threads = static_cast<unsigned>(count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        f(i);
      }
    });
  for (std::thread& th : pool) th.join();
}

}  // namespace semibj

#endif
