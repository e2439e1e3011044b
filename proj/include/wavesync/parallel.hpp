#pragma once

#include <cstddef>
#include <functional>

namespace wavesync {

// Worker count: hardware concurrency capped by the WAVESYNC_THREADS
// environment variable (values < 1 mean 1).
std::size_t thread_count();

// Runs fn(i) for i in [begin, end) on up to thread_count() threads with a
// static block partition. Results must not depend on execution order; callers
// write to disjoint slots or merge exactly associative state (integer counts).
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& fn);

} // namespace wavesync
