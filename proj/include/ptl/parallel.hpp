// Copyright (c) 2026 the ptl authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "ptl/int128.hpp"

namespace ptl {

inline int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Process [lo, hi] in fixed-size blocks pulled by a worker pool. Results are
// stored per block index, so the merged output is identical for any worker
// count. `fn(block_lo, block_hi)` returns one partial result.
template <class Partial, class Fn>
std::vector<Partial> map_blocks(i128 lo, i128 hi, i128 block_size, int jobs, Fn fn,
                                const std::function<void(long, long)>& progress = {}) {
  const long nblocks = static_cast<long>((hi - lo) / block_size) + 1;
  std::vector<Partial> parts(static_cast<size_t>(nblocks));
  std::atomic<long> next{0};
  std::atomic<long> done{0};
  int workers = std::min<long>(resolve_jobs(jobs), nblocks);
  auto run = [&] {
    while (true) {
      long idx = next.fetch_add(1);
      if (idx >= nblocks) break;
      i128 blo = lo + static_cast<i128>(idx) * block_size;
      i128 bhi = blo + block_size - 1;
      if (bhi > hi) bhi = hi;
      parts[static_cast<size_t>(idx)] = fn(blo, bhi);
      long d = done.fetch_add(1) + 1;
      if (progress) progress(d, nblocks);
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  return parts;
}

}  // namespace ptl
