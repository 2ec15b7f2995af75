#pragma once

#include <functional>

namespace hipsim {

// jobs <= 0 resolves to the hardware thread count.
int resolve_jobs(int jobs);

// Runs body(0..n-1) on up to `jobs` threads.  Callers store results by
// index, so output does not depend on scheduling; exceptions from workers
// are rethrown on the calling thread.
void parallel_for(int n, int jobs, const std::function<void(int)>& body);

}  // namespace hipsim
