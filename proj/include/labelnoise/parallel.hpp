#pragma once

#include <cstddef>
#include <functional>

namespace labelnoise {

/// Resolves a requested worker count; 0 means "all hardware threads".
std::size_t resolve_workers(std::size_t requested) noexcept;

/**
 * Runs body(i) for i in [0, count) on up to `workers` threads.
 *
 * Indices are handed out dynamically. Callers write results into per-index
 * slots, so output never depends on scheduling. The first exception thrown
 * by any body is rethrown after all threads join.
 */
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t workers = 0);

}  // namespace labelnoise
