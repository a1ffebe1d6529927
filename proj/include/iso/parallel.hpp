#pragma once

#include <cstddef>
#include <functional>

namespace iso {

/// Worker count: hardware concurrency capped by ISO_COMPARE_THREADS when set
/// to a positive integer. Always at least 1.
unsigned thread_limit();

/// Calls body(i) for i in [0, count) on up to `threads` workers. Each index
/// runs exactly once; the first exception thrown is rethrown after joining.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace iso
