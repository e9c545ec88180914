#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace netdrift {

// How many workers parallel_chunks will actually use for n items.
inline int effective_workers(std::size_t n, int workers) {
  int use = std::max(1, workers);
  return static_cast<int>(std::min<std::size_t>(use, std::max<std::size_t>(n, 1)));
}

// Runs fn(worker, begin, end) over disjoint chunks of [0, n), one contiguous
// chunk per worker. Outputs must go to per-index slots or per-worker buffers
// merged deterministically afterwards, so results do not depend on
// scheduling or on the worker count.
template <class Fn>
void parallel_chunks(std::size_t n, int workers, Fn&& fn) {
  if (n == 0) return;
  int use = effective_workers(n, workers);
  std::size_t chunk = (n + use - 1) / use;
  if (use == 1) {
    fn(0, std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(use);
  for (int w = 0; w < use; ++w) {
    std::size_t begin = static_cast<std::size_t>(w) * chunk;
    std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, w, begin, end] {
      try {
        fn(w, begin, end);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace netdrift
