#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace locclab {

/// Upper bound on the amplitude count d^n of a dense state.
inline constexpr std::size_t kMaxSizeCap = std::size_t{1} << 22;

/// Process-wide cap on d^n; defaults to kMaxSizeCap. Values above
/// kMaxSizeCap or below 2 are rejected.
std::size_t size_cap();
void set_size_cap(std::size_t cap);

/// d^n with overflow and cap checks. Throws SizeCapExceeded.
std::size_t checked_dimension(int parties, int dim);

/// Worker count for the embarrassingly parallel loops (heuristic restarts,
/// alignment restarts, Monte Carlo chunks, enumeration chunks). Initialized
/// from LOCCLAB_THREADS, default 1. Results never depend on this value.
unsigned thread_count();
void set_thread_count(unsigned threads);

/// Runs body(i) for i in [0, count) on up to thread_count() workers. The
/// body must only write to slot i of caller-owned storage.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace locclab
