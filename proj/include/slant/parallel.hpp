#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace slant {

inline unsigned default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

inline std::size_t chunk_count(std::size_t n, std::size_t chunk_size) {
  return (n + chunk_size - 1) / chunk_size;
}

// Runs fn(chunk_index, begin, end) over [0, n) in fixed-size chunks.
// Chunk boundaries depend only on n and chunk_size, never on the thread
// count, so any reduction that combines per-chunk results in chunk order
// is bitwise independent of how many workers ran.
template <typename Fn>
void for_each_chunk(std::size_t n, std::size_t chunk_size, unsigned n_threads,
                    Fn&& fn) {
  if (n == 0) return;
  if (chunk_size == 0) chunk_size = 1;
  const std::size_t chunks = chunk_count(n, chunk_size);
  if (n_threads == 0) n_threads = default_threads();
  if (n_threads > chunks) n_threads = static_cast<unsigned>(chunks);

  if (n_threads <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) {
      std::size_t begin = c * chunk_size;
      std::size_t end = begin + chunk_size < n ? begin + chunk_size : n;
      fn(c, begin, end);
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      std::size_t begin = c * chunk_size;
      std::size_t end = begin + chunk_size < n ? begin + chunk_size : n;
      fn(c, begin, end);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace slant
