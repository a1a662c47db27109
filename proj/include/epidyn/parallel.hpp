#pragma once

#include <functional>

namespace epidyn {

/// Worker count for fan-out workloads: EPIDYN_THREADS when set (minimum 1),
/// otherwise the hardware concurrency.
int worker_count();

/// Runs fn(0..n-1) across worker_count() threads. fn must be safe to call
/// concurrently for distinct indices.
void parallel_for(int n, const std::function<void(int)>& fn);

} // namespace epidyn
