#pragma once

#include <cstddef>
#include <functional>

namespace fieldspec {

// Worker count: FIELDSPEC_THREADS when set to a positive integer, otherwise
// std::thread::hardware_concurrency() (at least 1).
unsigned default_thread_count();

// Runs body(i) for i in [0, n) on up to `threads` workers (0 = default).
// Work items are claimed dynamically; callers write results into slot i so
// the outcome does not depend on scheduling. The first exception thrown by
// any body is rethrown after all workers join.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace fieldspec
