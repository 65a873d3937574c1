#pragma once

#include <cstddef>
#include <functional>

namespace qch {

/// Caps the worker count used by parallel_for (0 = hardware concurrency).
void set_thread_cap(std::size_t n);
std::size_t thread_cap();

/// Runs fn(i) for i in [0, n) across threads with static chunking.
/// Results must be written to per-index slots; the output is then independent
/// of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qch
