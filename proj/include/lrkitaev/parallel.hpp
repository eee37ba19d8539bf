#pragma once

#include <cstddef>
#include <functional>

namespace lrk {

// Worker count from LRKITAEV_THREADS (0 or unset = hardware concurrency).
unsigned thread_count();

// Runs body(i) for i in [0, n). Work is split into contiguous static chunks,
// so results written by index are independent of the thread count. Nested
// calls run serially on the calling thread. The first exception thrown by any
// body is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lrk
