#pragma once

#include <cstddef>
#include <functional>

namespace corb {

// 0 means hardware concurrency
void set_max_threads(unsigned k);
unsigned max_threads();

// runs body(i) for i in [0, n); each index is visited exactly once and callers
// write results into per-index slots, so output never depends on the thread count
void parallel_for(size_t n, const std::function<void(size_t)> &body);

} // namespace corb
