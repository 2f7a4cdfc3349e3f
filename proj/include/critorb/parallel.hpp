#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace critorb {

// Process-wide worker cap; the CLI --threads flag sets it. Results never
// depend on the thread count: every parallel loop writes disjoint slots.
int worker_threads();
void set_worker_threads(int n);

// Static block split of [begin, end) over the worker pool.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body);

}  // namespace critorb
