#pragma once

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace siegel {

/// Worker count from SIEGEL_RESTRICT_THREADS; 1 when unset or invalid.
inline unsigned worker_count() {
  const char* env = std::getenv("SIEGEL_RESTRICT_THREADS");
  if (env == nullptr) return 1;
  try {
    long v = std::stol(env);
    if (v < 1) return 1;
    return static_cast<unsigned>(v > 256 ? 256 : v);
  } catch (...) {
    return 1;
  }
}

/// Evaluates fn(i) for i in [0, n) on up to `workers` threads. Results are
/// returned in index order, so output never depends on scheduling.
template <typename Fn>
auto parallel_map(std::size_t n, Fn fn, unsigned workers = worker_count())
    -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<R> out(n);
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace siegel
