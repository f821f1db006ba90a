#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace edgemarket {

/// Worker cap: MEM_THREADS if set to a positive integer, else the OpenMP
/// default (machine parallelism).
int worker_threads();

/// Runs body(i) for i in [0, n) across OpenMP workers. Each index must write
/// only its own output slot. If any iteration throws, the exception from the
/// lowest failing index is rethrown after the loop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace edgemarket
