// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace accrete {

/// Splits [0, n) into `chunks` contiguous ranges and calls fn(begin, end,
/// chunk) for each, on up to `threads` threads. Chunk boundaries depend only
/// on `chunks`, so per-chunk partial results reduced in chunk order give the
/// same answer for any thread count.
template <class Fn>
void parallel_for(int n, int chunks, int threads, Fn&& fn) {
  chunks = std::max(1, std::min(chunks, n));
  auto range = [&](int c) {
    const long long b = static_cast<long long>(n) * c / chunks;
    const long long e = static_cast<long long>(n) * (c + 1) / chunks;
    return std::pair<int, int>(static_cast<int>(b), static_cast<int>(e));
  };
  threads = std::clamp(threads, 1, chunks);
  if (threads == 1) {
    for (int c = 0; c < chunks; ++c) {
      auto [b, e] = range(c);
      fn(b, e, c);
    }
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int c = t; c < chunks; c += threads) {
        auto [b, e] = range(c);
        fn(b, e, c);
      }
    });
  }
}

}  // namespace accrete
