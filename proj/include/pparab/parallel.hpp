#pragma once

#include <cstddef>
#include <functional>

namespace pparab {

/// Worker cap: PPARAB_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads. Each
/// index is visited exactly once; callers write results into per-index
/// slots so reductions stay deterministic. The first exception thrown by a
/// body is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace pparab
