#ifndef FFLAB_PARALLEL_HPP
#define FFLAB_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace fflab {

inline int default_threads() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Grid pitch of parallel_chunks; partial-sum arrays sized against it stay in sync.
inline constexpr std::uint64_t kParallelChunk = 1024;

/// Runs fn(begin, end) over a fixed chunk grid covering [0, n). The grid depends only on
/// n, never on the thread count, so results assembled per chunk and reduced in chunk
/// order are identical for every thread count.
inline void parallel_chunks(std::uint64_t n, int threads,
                            const std::function<void(std::uint64_t, std::uint64_t)>& fn) {
  if (n == 0) return;
  constexpr std::uint64_t kChunk = kParallelChunk;
  const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
  if (threads <= 1 || chunks == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) {
      fn(c * kChunk, std::min(n, (c + 1) * kChunk));
    }
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) break;
      fn(c * kChunk, std::min(n, (c + 1) * kChunk));
    }
  };
  std::vector<std::thread> pool;
  int nthreads = std::min<std::uint64_t>(threads, chunks);
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace fflab

#endif
