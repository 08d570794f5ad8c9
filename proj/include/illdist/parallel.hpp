#ifndef ILLDIST_PARALLEL_HPP
#define ILLDIST_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace illdist {

// Runs fn(i) for i in [0, n) on up to `threads` workers with a static block
// partition. Callers must make fn(i) independent of fn(j) and write results
// into per-index slots; reductions happen after the join, so the outcome is
// identical for every thread cap.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace illdist

#endif
