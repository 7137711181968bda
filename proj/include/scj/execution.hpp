#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>

namespace scj {

// Every data-parallel kernel keeps a plain serial path next to its OpenMP
// path. The serial one is the reference the tests and the benchmark compare
// against; both produce identical results.
enum class Execution : std::uint8_t { kSerial, kParallel };

// Runs f(i) for i in [0, n). Iterations must be independent. An exception
// thrown by any iteration is rethrown after the loop.
template <typename F>
void for_each_index(Execution exec, std::size_t n, F&& f) {
  if (exec == Execution::kSerial) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr error;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(scj_for_each_index_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace scj
