#pragma once

#include <cstddef>
#include <functional>

namespace soccerbench {

/// Runs fn(i) for every i in [0, count) across up to `threads` workers
/// (inline when threads <= 1). The first exception thrown by any worker is
/// rethrown after all workers finish. fn must be safe to call concurrently
/// for distinct i.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace soccerbench
