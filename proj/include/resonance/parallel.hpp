#pragma once

#include <cstddef>
#include <functional>

namespace resonance {

// Thread count resolution: explicit request > RESONANCE_THREADS env > hardware.
int resolve_threads(int requested);

// Runs fn(begin, end) over [0, n) in fixed-size chunks.  The chunk grid
// depends only on n and chunk_size, never on the thread count, so any
// chunk-indexed reduction performed by the caller is reproducible.
void parallel_chunks(std::size_t n, std::size_t chunk_size, int threads,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace resonance
