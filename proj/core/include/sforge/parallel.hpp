#pragma once

#include <functional>

namespace sforge {

// Worker count: SPANNER_FORGE_THREADS if set (clamped to [1, 256]),
// otherwise hardware concurrency.
int worker_count();

// Runs fn(i) for i in [0, n) across the worker pool. Blocks until all
// complete; exceptions are rethrown (first by index order). fn must be
// safe to call concurrently for distinct i.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace sforge
