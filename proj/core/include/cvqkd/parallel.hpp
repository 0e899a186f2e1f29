#pragma once

#include <cstddef>
#include <functional>

namespace cvqkd {

/// Worker count from the CVQKD_THREADS environment variable, else the hardware
/// concurrency (at least 1).
unsigned default_thread_count();

/// Calls body(i) for every i in [0, n) on up to `threads` workers (0 = default_thread_count()).
/// Indices are handed out in contiguous chunks; body must only write to slot i of its outputs.
/// The first exception thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace cvqkd
