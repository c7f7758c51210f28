#pragma once

#include <cstddef>
#include <functional>

namespace safeccc {

/// Run task(index) for every index in [0, count) on up to `workers` threads
/// (0 = hardware concurrency). Indices are handed out dynamically; callers
/// write results into per-index slots so the merge order is fixed.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& task);

} // namespace safeccc
