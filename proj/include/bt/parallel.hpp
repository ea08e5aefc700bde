#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace bt {

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Indices are handed
/// out one at a time, so callers that write only to slot i get results that
/// do not depend on scheduling. The exception of the lowest failing index is
/// rethrown after all workers finish.
template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads_wanted = std::min<std::size_t>(std::max(1u, jobs), std::max<std::size_t>(count, 1));
  std::vector<std::thread> threads;
  for (unsigned j = 1; j < threads_wanted; ++j) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace bt
