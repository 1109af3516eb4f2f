#pragma once

#include <cstddef>
#include <functional>

namespace expdyn {

/// Worker count: EXPDYN_THREADS if set and positive, else the hardware count.
std::size_t thread_count();

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = thread_count()).
/// Work is claimed by index, so results written per index are independent of
/// the schedule. The first exception thrown by a body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t threads = 0);

}  // namespace expdyn
