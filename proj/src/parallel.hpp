#pragma once

#include <cstddef>
#include <exception>

namespace qfl::detail {

// Runs f(i) for i in [0, n) across OpenMP threads. If any iteration throws,
// the exception from the lowest index is rethrown after the loop, so the
// reported failure does not depend on thread scheduling.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  std::size_t first_failure = n;
  std::exception_ptr failure;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < count; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(qfl_parallel_for_failure)
      {
        if (static_cast<std::size_t>(i) < first_failure) {
          first_failure = static_cast<std::size_t>(i);
          failure = std::current_exception();
        }
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace qfl::detail
