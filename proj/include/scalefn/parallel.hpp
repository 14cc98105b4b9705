#ifndef SCALEFN_PARALLEL_HPP
#define SCALEFN_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace scalefn {

// Worker count: SCALEFN_THREADS when set, hardware concurrency otherwise.
int worker_count();

// Runs fn(i) for i in [0, n).  Results must be written to disjoint slots so
// the output is deterministic regardless of schedule.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

} // namespace scalefn

#endif
