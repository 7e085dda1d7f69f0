#pragma once

#include <cstddef>
#include <functional>

namespace lspacf {

/// Worker count: hardware concurrency, capped by the LSPACF_THREADS
/// environment variable when set.
std::size_t worker_count();

/// Runs fn(i) for i in [0, count).  Tasks must be independent and write only
/// to their own output slots; task-to-worker assignment is unspecified, so
/// any randomness must come from per-task substreams.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace lspacf
