#pragma once

#include <cstddef>
#include <functional>

namespace moebius {

// Worker count: MOEBIUSKIT_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
unsigned worker_count();

// Runs body(i) for i in [0, n) on up to worker_count() threads. Exceptions
// thrown by body are rethrown on the calling thread (the first one wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace moebius
