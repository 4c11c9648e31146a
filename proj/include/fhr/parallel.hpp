#pragma once

#include <cstddef>
#include <functional>

namespace fhr {

/// Worker count for parallel loops. Read once from FHR_THREADS; falls back to
/// the number of hardware threads.
std::size_t thread_count();

/// Overrides the worker count for the rest of the process (0 restores the default).
void set_thread_count(std::size_t n);

/// Runs body(i) for i in [begin, end) on up to thread_count() threads.
/// Iterations must be independent. Exceptions from workers are rethrown on the caller.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body);

}  // namespace fhr
