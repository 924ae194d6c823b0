#pragma once

#include <cstddef>
#include <functional>

namespace qdarp {

// Dynamic dispatch of [0, n) across a worker pool. Callers index their
// result slots by i, so scheduling order never shows in the output; the
// first exception thrown by any task is rethrown after the pool drains.
void parallel_for(std::size_t n, int jobs,
                  const std::function<void(std::size_t)>& fn);

// QDARP_JOBS environment override, else hardware concurrency (>= 1).
int default_jobs();

}  // namespace qdarp
