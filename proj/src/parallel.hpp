#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace reco::detail {

// OpenMP loop over [0, n). The first exception thrown by `body` is rethrown
// after the loop; remaining iterations still run but their errors are dropped.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace reco::detail
