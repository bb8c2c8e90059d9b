#pragma once

#include <functional>

namespace nmk {

/// Worker cap: NMK_THREADS when set (>= 1), otherwise the hardware
/// concurrency.
int max_workers();

/// Runs fn(0..n-1) across up to max_workers() threads. Each index is
/// processed exactly once; callers write results into index-addressed slots
/// so the merged output is deterministic regardless of scheduling. The
/// first exception thrown by any task is rethrown after all workers join.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace nmk
