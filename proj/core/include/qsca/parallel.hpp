#pragma once

#include <cstddef>
#include <functional>

namespace qsca {

/// Worker count: QSCA_WORKERS if set and positive, else the hardware
/// concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Bodies must
/// write only to their own slot; the first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace qsca
