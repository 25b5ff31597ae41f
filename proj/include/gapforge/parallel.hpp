#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

#include "gapforge/common.hpp"

namespace gapforge {

inline unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Maps fn over the blocks covering [begin, end) and feeds the results to
// consume in block order. Blocks within a wave run on separate threads;
// the block size is fixed by the caller and never depends on the worker
// count, so the consumed stream is identical for any parallelism setting.
//
// map:     Result(u64 block_begin, u64 block_end)
// consume: void(u64 block_begin, u64 block_end, Result&)
template <typename Result, typename MapFn, typename ConsumeFn>
void ordered_block_map(u64 begin, u64 end, u64 block_size, unsigned workers,
                       MapFn&& map, ConsumeFn&& consume) {
  if (begin >= end) return;
  if (block_size == 0) block_size = 1;
  workers = std::max(1u, resolve_workers(workers));

  u64 nblocks = (end - begin + block_size - 1) / block_size;
  for (u64 wave = 0; wave < nblocks; wave += workers) {
    u64 in_wave = std::min<u64>(workers, nblocks - wave);
    std::vector<Result> results(in_wave);
    std::vector<std::exception_ptr> errors(in_wave);

    auto run = [&](u64 slot) {
      u64 b = wave + slot;
      u64 lo = begin + b * block_size;
      u64 hi = std::min(end, lo + block_size);
      try {
        results[slot] = map(lo, hi);
      } catch (...) {
        errors[slot] = std::current_exception();
      }
    };

    if (in_wave == 1 || workers == 1) {
      for (u64 s = 0; s < in_wave; ++s) run(s);
    } else {
      std::vector<std::thread> threads;
      threads.reserve(in_wave);
      for (u64 s = 0; s < in_wave; ++s) threads.emplace_back(run, s);
      for (auto& t : threads) t.join();
    }

    for (u64 s = 0; s < in_wave; ++s) {
      if (errors[s]) std::rethrow_exception(errors[s]);  // smallest block first
      u64 b = wave + s;
      u64 lo = begin + b * block_size;
      u64 hi = std::min(end, lo + block_size);
      consume(lo, hi, results[s]);
    }
  }
}

}  // namespace gapforge
