#pragma once

#include <cstddef>
#include <functional>

namespace respscreen {

/// Number of worker threads used when a caller passes jobs <= 0.
int default_jobs();

/// Run fn(i) for i in [0, count) on up to `jobs` threads. Work items are
/// handed out through a shared counter, so uneven items balance; callers
/// must write results indexed by i to stay deterministic regardless of
/// scheduling. The first exception thrown by any item is rethrown on the
/// calling thread after all workers finish.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace respscreen
