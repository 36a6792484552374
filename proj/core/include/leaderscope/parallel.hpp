#pragma once

// Deterministic fork/join helper. Work is split into fixed contiguous chunks
// whose boundaries depend only on (n, thread count), and each index is
// processed independently, so results never depend on scheduling order.
// Thread count is min(hardware, LEADERSCOPE_THREADS if set); 1 disables forking.

#include <cstddef>
#include <functional>

namespace leaderscope {

/// Effective worker count honouring the LEADERSCOPE_THREADS environment variable.
unsigned thread_count();

/// Runs fn(i) for i in [0, n), possibly on several threads. fn must write only
/// to per-index slots. Exceptions from workers are rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace leaderscope
