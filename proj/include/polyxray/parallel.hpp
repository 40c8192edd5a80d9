#pragma once

#include <cstddef>
#include <functional>

namespace polyxray {

/// Worker count from POLYXRAY_THREADS (default: hardware concurrency, at least 1).
unsigned worker_count();

/// Calls fn(i) for i in [0, n) across workers. Each index is handled exactly once;
/// results must be written per index so reductions stay order-fixed.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace polyxray
