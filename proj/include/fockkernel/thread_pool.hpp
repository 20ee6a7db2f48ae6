#pragma once

#include <cstddef>
#include <functional>

namespace fockkernel {

// Number of worker threads: FOCKKERNEL_THREADS if set (clamped to >= 1),
// otherwise hardware concurrency.
int worker_count();

// Runs fn(i) for i in [0, n). Work is split into contiguous chunks across
// worker_count() threads; fn must only touch state owned by index i, so the
// result is identical to the sequential loop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace fockkernel
