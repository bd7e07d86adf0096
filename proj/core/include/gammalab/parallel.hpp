#pragma once

#include <cstddef>
#include <functional>

namespace gammalab {

// Worker cap from GAMMA_LAB_THREADS, else hardware concurrency (at least 1).
std::size_t worker_count();

// Runs body(i) for i in [0, count). Each index is visited exactly once; callers
// write results into per-index slots so the outcome does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace gammalab
