#pragma once

#include <cstddef>
#include <functional>

namespace pagraph {

/// Thread count used when a caller passes 0: $PAGRAPH_THREADS if set to a
/// positive integer, otherwise std::thread::hardware_concurrency() (min 1).
unsigned default_thread_count();

/// Runs body(i) for every i in [0, count) on up to `threads` workers
/// (0 = default_thread_count()). Indices are handed out dynamically, so
/// bodies must write only to per-index slots. The first exception thrown by
/// any body is rethrown after all workers have joined.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace pagraph
