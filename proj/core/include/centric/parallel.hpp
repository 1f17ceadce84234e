#ifndef CENTRIC_PARALLEL_HPP
#define CENTRIC_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace centric {

/// Worker count: `requested` if positive, else CENTRIC_KIT_THREADS if set and
/// positive, else hardware concurrency. Never less than one.
std::size_t worker_count(std::size_t requested = 0);

/// Runs body(i) for i in [0, count) on up to `workers` threads. Each index is
/// run exactly once; the first exception thrown is rethrown after all
/// workers finish.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body);

} // namespace centric

#endif
