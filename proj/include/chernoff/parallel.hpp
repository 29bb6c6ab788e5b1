#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace chernoff {

namespace detail {
inline std::optional<int>& thread_override() {
  static std::optional<int> value;
  return value;
}

inline bool& inside_worker() {
  thread_local bool flag = false;
  return flag;
}
}  // namespace detail

// Programmatic cap used by tests; takes precedence over CHERNOFF_THREADS.
inline void set_thread_override(std::optional<int> n) {
  detail::thread_override() = n;
}

inline int thread_count() {
  if (detail::thread_override()) return std::max(1, *detail::thread_override());
  if (const char* env = std::getenv("CHERNOFF_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

// Runs fn(i) for i in [0, n). Workers own disjoint index blocks and must
// write only to per-index slots; reductions happen after the join, in index
// order, so results are bitwise independent of the thread count. Nested
// calls from inside a worker run serially instead of spawning more threads.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  if (n == 0) return;
  const std::size_t workers =
      detail::inside_worker()
          ? 1
          : std::min<std::size_t>(std::size_t(thread_count()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      detail::inside_worker() = true;
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(n, lo + chunk);
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Pairwise summation in fixed index order; deterministic and more accurate
// than a running sum for long vectors.
inline double pairwise_sum(const double* data, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v.data(), v.size());
}

}  // namespace chernoff
