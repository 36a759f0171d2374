#pragma once

#include <cstddef>
#include <functional>

namespace sphere_re {

/// Worker count: SPHERE_RE_THREADS if set to a positive integer, else the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Runs fn(i) for i in [0, n) on up to worker_count() threads. Each index
/// runs exactly once; callers write into per-index slots so the merged
/// result does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace sphere_re
