#pragma once

#include <cstddef>
#include <functional>

namespace lpball {

/// Number of workers for a requested thread count; 0 means one per
/// hardware thread.
unsigned resolve_threads(unsigned requested);

/// Calls body(i) for every i < count on up to `threads` workers, handing out
/// indices dynamically. Callers store results by index so that the outcome
/// does not depend on scheduling. The first exception thrown by a body is
/// rethrown after all workers have stopped.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace lpball
