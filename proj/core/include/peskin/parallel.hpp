#pragma once

#include <cstddef>
#include <functional>

namespace peskin {

/// Worker count for grid loops. Read once from PESKIN_LAB_THREADS, defaulting
/// to the hardware concurrency.
int worker_threads();

/// Override the worker count (0 restores the environment default).
void set_worker_threads(int n);

/// Runs body(i) for i in [0, n). Iterations must be independent; each index
/// is visited exactly once, so results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace peskin
