#pragma once

#include <cstddef>
#include <functional>

namespace riesz {

/// Worker count: RIESZ_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, n). Each index is executed exactly once; callers
/// write into per-index slots and reduce afterwards in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace riesz
