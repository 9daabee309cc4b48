#ifndef HT2_PARALLEL_HPP
#define HT2_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace ht2::detail {

// Worker count from the HT2_THREADS environment variable, else the hardware
// concurrency. Never affects results, only wall time.
int worker_count();

// Runs fn(i) for i in [0, count) across the configured workers with a
// static chunk partition. Exceptions are captured and rethrown on the
// calling thread. Callers must make fn(i) independent of execution order.
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn);

}  // namespace ht2::detail

#endif  // HT2_PARALLEL_HPP
