#pragma once

#include <cstddef>
#include <functional>

namespace mwl {

/// Worker count: MWL_THREADS if set to a positive integer, otherwise the
/// hardware concurrency.
std::size_t thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads.  Bodies
/// must write only to their own slot of any shared output.  The first
/// exception thrown (lowest index) is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace mwl
