#pragma once

#include <cstddef>
#include <functional>

namespace quenchbat {

// Resolve a worker-count hint: a positive hint is taken as-is; 0 means
// "auto" (QUENCHBAT_WORKERS if set and valid, else hardware concurrency).
// Negative hints throw SpecError.
int resolve_workers(int hint);

// Run fn(begin, end) over [0, n) split into contiguous chunks, one per
// worker. Chunk boundaries depend only on (n, workers), so writes into
// per-index slots are reproducible. Exceptions from workers are rethrown.
void parallel_for_chunks(std::size_t n, int workers,
                         const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace quenchbat
