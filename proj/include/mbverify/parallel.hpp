#pragma once

#include <cstddef>
#include <functional>

namespace mbverify {

// Worker cap: MBVERIFY_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
unsigned worker_count();

// Calls body(i) for every i in [0, n), spread over up to worker_count()
// threads. Callers write results into per-index slots, so the outcome does
// not depend on scheduling. Nested calls run serially on the calling thread.
// The first exception thrown by body is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace mbverify
