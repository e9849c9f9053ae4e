#pragma once

#include <cstddef>
#include <functional>

namespace ul {

// Worker count from UL_THREADS, else hardware concurrency; always >= 1.
std::size_t thread_budget();

// Runs body(i) for i in [0, count) on up to thread_budget() threads.
// Callers write results into per-index slots so the merge order never
// depends on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace ul
