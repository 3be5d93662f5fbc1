#pragma once

#include <cstddef>
#include <functional>

namespace icslab {

/// Worker count: hardware concurrency capped by the ICSLAB_THREADS
/// environment variable when it holds a positive integer.
std::size_t thread_count();

/// Calls body(i) for every i in [0, count), spread over thread_count()
/// workers in contiguous blocks. body must only write to slot i of
/// caller-owned storage; any reduction happens afterwards on the caller's
/// thread so results never depend on scheduling. The first exception
/// thrown by body is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace icslab
