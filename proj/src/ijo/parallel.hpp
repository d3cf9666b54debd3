#pragma once

#include <cstddef>
#include <functional>

namespace ijo {

/// Thread count from an explicit request, else IJOBSTRUCT_THREADS, else the
/// hardware concurrency. Always at least 1.
unsigned resolve_threads(int requested);

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Results must be
/// written to per-index slots by the caller; the first exception thrown by a
/// worker is rethrown after all workers join.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace ijo
