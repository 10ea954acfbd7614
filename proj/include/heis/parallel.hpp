#pragma once

#include <functional>

namespace heis {

/// Worker cap: HEISBIS_THREADS if set (>= 1), else std::thread::hardware_concurrency().
int worker_count();

/// Runs run_chunk(0..n_chunks-1) on up to worker_count() threads.  Chunk results
/// must be written to per-chunk slots so the outcome is independent of scheduling.
void parallel_for_chunks(int n_chunks, const std::function<void(int)>& run_chunk);

}  // namespace heis
