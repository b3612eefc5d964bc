#pragma once

#include <functional>

#include "eggd/common.hpp"

namespace eggd {

/// Worker count: EGGD_THREADS when set to a positive integer, otherwise the
/// hardware concurrency.
int thread_count();

/// Runs fn(begin, end) over [0, count) split into fixed chunks of `chunk`
/// items. The split never depends on the worker count, so any per-item
/// result is identical for every thread count.
void parallel_for_chunks(Index count, Index chunk,
                         const std::function<void(Index, Index)>& fn);

}  // namespace eggd
