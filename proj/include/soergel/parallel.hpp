#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace soergel {

// Selects the OpenMP kernel or the plain loop it is tested against.
enum class Exec { Serial, Parallel };

// Calls f(k) for k in [0, n). Work items must not share mutable state.
// The first exception thrown by any item is rethrown after the loop.
template <class F>
void for_each_index(std::size_t n, Exec exec, F&& f) {
  if (exec == Exec::Serial || n < 2) {
    for (std::size_t k = 0; k < n; ++k) f(k);
    return;
  }
  std::exception_ptr err;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic, 1)
  for (long long k = 0; k < static_cast<long long>(n); ++k) {
    try {
      f(static_cast<std::size_t>(k));
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

int available_threads();

}  // namespace soergel
