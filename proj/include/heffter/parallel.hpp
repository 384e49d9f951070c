#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace heffter {

/// Worker count for `requested` threads; 0 means hardware concurrency.
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace detail {

template <class Body>
void run_workers(std::size_t tasks, unsigned threads, Body&& body) {
  threads = std::max(1u, std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(std::max<std::size_t>(tasks, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t i; (i = next.fetch_add(1)) < tasks;) body(i);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = tasks;
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

/// Evaluates fn(i) for i in [0, tasks) and returns the results in index
/// order, whatever the thread count.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t tasks, unsigned threads, Fn&& fn) {
  std::vector<std::optional<R>> slots(tasks);
  detail::run_workers(tasks, threads, [&](std::size_t i) { slots[i] = fn(i); });
  std::vector<R> out;
  out.reserve(tasks);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// Result of the lowest task index for which fn returns a value. fn(i, stop)
/// may poll stop() to abandon work that can no longer win.
template <class R, class Fn>
std::optional<R> parallel_first(std::size_t tasks, unsigned threads, Fn&& fn) {
  std::vector<std::optional<R>> slots(tasks);
  std::atomic<std::size_t> best{tasks};
  detail::run_workers(tasks, threads, [&](std::size_t i) {
    if (i > best.load()) return;
    auto stop = [&] { return best.load() < i; };
    auto r = fn(i, stop);
    if (!r) return;
    slots[i] = std::move(r);
    std::size_t cur = best.load();
    while (i < cur && !best.compare_exchange_weak(cur, i)) {
    }
  });
  const std::size_t b = best.load();
  if (b == tasks) return std::nullopt;
  return std::move(slots[b]);
}

}  // namespace heffter
