#pragma once

// Index-range parallelism for grid scans. Not installed.

#include <cstddef>
#include <functional>

namespace hexfourier::detail {

// Worker count: HEXFOURIER_THREADS if set to a positive integer, otherwise the
// hardware concurrency.
unsigned thread_count();

// Calls body(i) for every i in [0, n). Each index is visited exactly once; the
// caller writes results by index, so output order does not depend on
// scheduling. The exception from the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hexfourier::detail
