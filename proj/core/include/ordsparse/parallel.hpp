#pragma once

#include <functional>

namespace ordsparse {

/// Runs fn(0..count-1) across up to `threads` worker threads. Results must
/// be written to per-index slots so the merged output is independent of
/// scheduling. Rethrows the first exception raised by any worker. threads
/// <= 1 runs inline.
void parallel_for_indices(int count, int threads,
                          const std::function<void(int)>& fn);

}  // namespace ordsparse
