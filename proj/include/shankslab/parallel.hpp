#pragma once

#include <cstddef>
#include <functional>

namespace shankslab {

// 0 means "all hardware threads"; the result is always at least 1.
unsigned resolve_threads(unsigned requested) noexcept;

// Runs body(i) for every i in [0, count) on up to `threads` workers. Work is
// claimed dynamically, so body must write only to slots owned by i. If a
// call throws, remaining work is abandoned and the exception with the
// smallest index among the failures seen is rethrown.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace shankslab
