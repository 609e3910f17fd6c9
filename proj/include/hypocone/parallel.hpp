#ifndef HYPOCONE_PARALLEL_HPP
#define HYPOCONE_PARALLEL_HPP

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace hypocone {

// Index-sharded parallel loop; results must be written to per-index slots so
// the reduction stays deterministic regardless of the thread count.
inline void parallel_for(int count, int threads,
                         const std::function<void(int)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  const int workers = std::min(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (int i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

// HYPOCONE_THREADS environment variable; default 1.
inline int env_thread_count() {
  const char* v = std::getenv("HYPOCONE_THREADS");
  if (!v) return 1;
  int n = std::atoi(v);
  return n > 0 ? n : 1;
}

}  // namespace hypocone

#endif
