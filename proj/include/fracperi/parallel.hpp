#pragma once

#include <cstddef>
#include <functional>

namespace fracperi {

/// Worker count: FRACPERI_THREADS if set (>= 1), otherwise hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, n). Each index is visited exactly once; callers
/// write into per-index slots and reduce afterwards in index order, so results
/// do not depend on the number of workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fracperi
