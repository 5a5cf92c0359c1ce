#pragma once

#include <cstddef>
#include <functional>

namespace cheb {

/// Worker count: CHEB_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int worker_count();

/// Runs body(i) for every i in [0, n) across worker_count() threads. Each
/// index is visited exactly once; the first exception thrown is rethrown.
/// Calls made from inside a body run serially on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cheb
