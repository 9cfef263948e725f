#pragma once

#include <cstddef>
#include <functional>

namespace cauchy
{

/// Resolves a worker count: 0 means hardware concurrency, never less than 1.
int resolve_threads(int threads);

/// Runs body(begin, end) over a static partition of [0, n) into contiguous chunks.
/// Callers write results into per-index slots, so the outcome does not depend on
/// the worker count.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace cauchy
