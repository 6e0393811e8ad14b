#pragma once

#include <cstddef>
#include <functional>

namespace dbicc {

/// Worker count used when a caller passes 0.
unsigned default_thread_count();

/// Runs body(i) for every i in [0, n) on up to `threads` workers (0 = all
/// hardware threads). Each index is visited exactly once; callers write
/// results into slot i, so output never depends on scheduling. The first
/// exception thrown by any body is rethrown on the calling thread.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace dbicc
