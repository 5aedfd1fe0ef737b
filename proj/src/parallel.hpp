#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace kflat::detail {

// Runs body(i) for i in [0, n) on up to `workers` threads. Each index is
// handled by exactly one thread, so writes to slot i need no locking.
template <class Body>
void parallel_for(int n, int workers, Body body) {
  workers = std::clamp(workers, 1, std::max(1, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace kflat::detail
