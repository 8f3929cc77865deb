#pragma once

#include <cstddef>
#include <functional>

namespace volkov {

/// Worker count used by parallel loops. Initialized from the VOLKOV_THREADS
/// environment variable (default 1).
int thread_count();
void set_thread_count(int n);

/// Runs body(i) for i in [0, n) on up to thread_count() threads with a static
/// contiguous partition. Each index must write only its own outputs; results
/// are then independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace volkov
