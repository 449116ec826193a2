#pragma once

#include <cstddef>
#include <cstdint>

namespace trustbias::detail {

// Static partition of [0, n): every index is written by exactly one worker and
// no cross-index reduction happens here, so results do not depend on `threads`.
template <class Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
  const auto count = static_cast<std::int64_t>(n);
#if defined(_OPENMP)
  if (threads > 1 && count > 1) {
#pragma omp parallel for num_threads(threads) schedule(static)
    for (std::int64_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)threads;
#endif
  for (std::int64_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace trustbias::detail
