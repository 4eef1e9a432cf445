#pragma once

#include <cstdint>
#include <functional>

namespace dirac3t {

// Worker cap: DIRAC3T_THREADS env, overridden by set_max_threads (CLI
// --threads); defaults to the hardware count.
int max_threads();
void set_max_threads(int n);

// Index-parallel loop over [0, n); the body must only write state owned by
// its index so results are schedule independent.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body);

}  // namespace dirac3t
