#pragma once

#include <cstdint>
#include <functional>

namespace hvlab {

/// Worker count: `requested` if nonzero, else HVLAB_THREADS, else hardware
/// concurrency (at least 1).
unsigned resolve_threads(unsigned requested);

/// Splits [0, n) into contiguous chunks and runs fn(begin, end) on up to
/// `threads` workers. fn must only touch state owned by its range; callers do
/// their own reduction so results do not depend on the thread count.
void parallel_chunks(std::uint64_t n, unsigned threads,
                     const std::function<void(std::uint64_t, std::uint64_t)>& fn);

}  // namespace hvlab
