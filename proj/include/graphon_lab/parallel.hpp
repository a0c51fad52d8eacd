#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace graphon_lab {

/// Worker count: GRAPHON_LAB_THREADS if set to a positive integer, else the
/// hardware concurrency. Always at least 1.
std::size_t thread_count();

/// Overrides thread_count() for the whole process; 0 restores the default.
void set_thread_cap(std::size_t cap);

/// True inside a parallel_for worker; nested loops then run inline.
bool in_parallel_region();

namespace detail {
struct RegionGuard {
  RegionGuard();
  ~RegionGuard();
  bool previous;
};
}  // namespace detail

/// Calls f(i) for every i in [0, n). Work items are handed out dynamically,
/// so f must only write to slot i of its output. The first exception (by
/// index) is rethrown after all workers finish.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  const std::size_t workers = in_parallel_region() ? 1 : std::min(thread_count(), n);
  if (workers <= 1) {
    detail::RegionGuard guard;
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto run = [&] {
    detail::RegionGuard guard;
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// splitmix64 finaliser; used to derive independent per-item seeds.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index);

}  // namespace graphon_lab
