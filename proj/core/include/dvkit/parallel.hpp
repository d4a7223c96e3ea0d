#pragma once

#include <cstddef>
#include <functional>

namespace dvkit {

// Worker count: DVKIT_THREADS if set (>= 1), else hardware concurrency.
unsigned worker_count();

// Calls body(i) for i in [0, count), split into contiguous blocks across
// workers. Callers write into per-index slots and reduce afterwards in index
// order, so results do not depend on the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace dvkit
