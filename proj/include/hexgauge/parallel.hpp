#pragma once

#include <cstddef>
#include <functional>

namespace hexgauge {

/// Worker count: HEXGAUGE_THREADS when set to a positive integer, otherwise
/// the hardware concurrency.
unsigned thread_count();

/// Runs body(begin, end) over contiguous chunks of [0, n). Chunk k always
/// covers the same range for a given thread count, so callers that collect
/// per-chunk results and merge them in chunk order stay deterministic.
void parallel_chunks(std::size_t n, unsigned chunks,
                     const std::function<void(unsigned chunk, std::size_t begin, std::size_t end)>& body);

}  // namespace hexgauge
