#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace torq {

/// Selects the per-sample loop implementation. `serial` is the reference
/// path; `parallel` distributes independent iterations over OpenMP threads.
enum class ExecPolicy { serial, parallel };

/// Runs f(i) for i in [0, n). Iterations must be independent and write only
/// to slot i of preallocated outputs, so both policies produce identical
/// results. The exception of the lowest failing index is rethrown, matching
/// what the serial loop would report.
template <class F>
void for_each_index(std::size_t n, ExecPolicy policy, F&& f) {
  if (policy == ExecPolicy::serial) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr first;
  long long first_index = -1;
  std::mutex guard;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!first || i < first_index) {
        first = std::current_exception();
        first_index = i;
      }
    }
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace torq
