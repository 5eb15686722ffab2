#pragma once

#include <cstddef>
#include <functional>

namespace coha::parallel {

// Worker-pool width; 1 means fully sequential. Set once by the CLI from
// --jobs before any computation starts.
void set_jobs(int jobs);
int jobs();

// Runs fn(i) for i in [0, n). With jobs > 1 the index range is split across
// threads; results must be written to preallocated per-index slots so the
// final reduction order is deterministic regardless of the thread count.
void for_range(size_t n, const std::function<void(size_t)>& fn);

}  // namespace coha::parallel
