#ifndef FSILAB_PARALLEL_HPP
#define FSILAB_PARALLEL_HPP

#include <functional>

namespace fsilab {

// Worker count from FSILAB_THREADS (default 1, clamped to [1, 64]).
int thread_count();

// Runs fn(i) for i in [0, n).  Iterations must write to disjoint locations;
// outputs are then bitwise independent of the thread count.
void parallel_for(int n, const std::function<void(int)>& fn);

} // namespace fsilab

#endif
