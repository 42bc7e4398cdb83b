#pragma once

#include <cstddef>
#include <functional>

namespace biqwlct {

/// Threads used for data-parallel loops: hardware concurrency, capped by the
/// BIQWLCT_THREADS environment variable when it holds a positive integer.
std::size_t worker_count();

/// Runs body(begin, end) over contiguous chunks of [0, count). Each index is
/// visited exactly once; results must not depend on the chunking.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t begin, std::size_t end)>& body);

}  // namespace biqwlct
