#ifndef MUSKAT_PARALLEL_HPP
#define MUSKAT_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace muskat {

/// Number of worker threads for the O(N^2) loops. Controlled by the
/// MUSKAT_THREADS environment variable (0 or unset = hardware concurrency).
int thread_count();

/// Runs fn(i) for i in [0, n). Work is split into contiguous chunks, one per
/// thread; every index is processed by exactly one thread, so per-index
/// results are deterministic regardless of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace muskat

#endif
