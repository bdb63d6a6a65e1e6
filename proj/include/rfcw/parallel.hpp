#pragma once

#include <cstddef>
#include <functional>

namespace rfcw {

// Worker count: RFCW_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t worker_count();

// Runs body(i) for i in [0, count). Work is striped across workers; results
// must be written to per-index slots so the outcome is order-independent.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& body);

}  // namespace rfcw
