#pragma once

#include <cstddef>
#include <functional>

namespace illiq {

// Process-wide worker count used by parallel_for when no explicit count is
// given. Starts from the ILLIQCORR_THREADS environment variable if set,
// otherwise the hardware concurrency. Thread count never affects results,
// only wall-clock time.
unsigned max_threads();
void set_max_threads(unsigned n);

// Run body(i) for i in [0, count). Work items must be independent; each item
// writes only to its own slot of any shared output. Exceptions thrown by the
// body are captured and the first one is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace illiq
