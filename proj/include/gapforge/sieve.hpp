#pragma once

#include <atomic>
#include <bit>
#include <cmath>
#include <cstring>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "gapforge/common.hpp"
#include "gapforge/parallel.hpp"

namespace gapforge {

struct SieveConfig {
  u64 limit = 0;                  // inclusive upper bound on prime values
  u64 segment_size = 1u << 20;    // width of the value range per segment
  unsigned parallelism = 0;       // worker count hint; 0 = hardware

  void validate() const {
    if (segment_size < 1024) throw DomainError("segment_size must be >= 1024");
    if (limit > u64(INT64_MAX)) throw DomainError("limit above 2^63-1 is not supported");
  }
};

struct IndexedPrime {
  u64 n;  // 1-based index
  u64 p;
};

namespace detail {

// Odd primes <= limit by a plain odd-only sieve; used for base primes.
inline std::vector<u64> simple_odd_primes(u64 limit) {
  std::vector<u64> out;
  if (limit < 3) return out;
  u64 count = (limit - 1) / 2;  // odds 3,5,...,<=limit
  std::vector<bool> composite(count, false);
  for (u64 i = 0;; ++i) {
    u64 p = 2 * i + 3;
    if (p * p > limit) break;
    if (composite[i]) continue;
    for (u64 m = p * p; m <= limit; m += 2 * p) composite[(m - 3) / 2] = true;
  }
  for (u64 i = 0; i < count; ++i)
    if (!composite[i]) out.push_back(2 * i + 3);
  return out;
}

// Bitmap of odd values in [lo, hi): bit i <-> value first_odd + 2i, set = composite.
struct OddSegment {
  u64 first_odd = 0;
  u64 bit_count = 0;
  std::vector<u64> words;

  void sieve(u64 lo, u64 hi, const std::vector<u64>& base_primes) {
    first_odd = lo | 1;
    bit_count = first_odd < hi ? (hi - first_odd + 1) / 2 : 0;
    words.assign((bit_count + 63) / 64, 0);
    if (bit_count == 0) return;
    for (u64 p : base_primes) {
      if (p * p >= hi) break;
      u64 start = p * p;
      if (start < first_odd) {
        u64 k = (first_odd + p - 1) / p;
        start = k * p;
        if (start % 2 == 0) start += p;
      }
      for (u64 m = start; m < hi; m += 2 * p) {
        u64 bit = (m - first_odd) / 2;
        words[bit >> 6] |= u64(1) << (bit & 63);
      }
    }
    // mask tail bits beyond bit_count so popcount/extraction ignore them
    if (u64 tail = bit_count & 63; tail != 0) words.back() |= ~u64(0) << tail;
  }

  u64 count() const {
    if (bit_count == 0) return 0;
    u64 c = 0;
    for (u64 w : words) c += std::popcount(~w);
    return c;
  }

  template <typename Fn>
  void for_each_prime(Fn&& fn) const {
    for (u64 wi = 0; wi < words.size(); ++wi) {
      u64 w = ~words[wi];
      while (w != 0) {
        u64 bit = std::countr_zero(w);
        w &= w - 1;
        fn(first_odd + 2 * (wi * 64 + bit));
      }
    }
  }
};

}  // namespace detail

// Ordered source of (index, prime) pairs: all primes <= limit, indices
// starting at (1, 2). Segments are sieved in parallel waves; emission is
// order-restoring, so consumers always observe strictly increasing primes
// independent of segment_size and parallelism.
class PrimeStream {
public:
  explicit PrimeStream(u64 limit, SieveConfig cfg = {}) : cfg_(cfg) {
    cfg_.limit = limit;
    cfg_.validate();
    if (limit < 2) throw EmptyRangeError("prime range is empty: limit < 2");
    u64 root = static_cast<u64>(std::sqrt(static_cast<double>(limit))) + 2;
    while (root * root > limit) --root;
    base_ = detail::simple_odd_primes(root);
    buffer_.push_back(2);
    next_block_ = 3;
  }

  std::optional<IndexedPrime> next() {
    while (pos_ >= buffer_.size()) {
      if (!refill()) return std::nullopt;
    }
    return IndexedPrime{++emitted_, buffer_[pos_++]};
  }

  // Drains the remaining primes (values only) into a vector.
  std::vector<u64> collect() {
    std::vector<u64> out;
    while (auto ip = next()) out.push_back(ip->p);
    return out;
  }

  u64 limit() const { return cfg_.limit; }

private:
  bool refill() {
    if (next_block_ > cfg_.limit) return false;
    buffer_.clear();
    pos_ = 0;
    unsigned workers = resolve_workers(cfg_.parallelism);
    u64 wave_end = std::min<u64>(cfg_.limit + 1, next_block_ + cfg_.segment_size * workers);
    ordered_block_map<detail::OddSegment>(
        next_block_, wave_end, cfg_.segment_size, workers,
        [&](u64 lo, u64 hi) {
          detail::OddSegment seg;
          seg.sieve(lo, hi, base_);
          return seg;
        },
        [&](u64, u64, detail::OddSegment& seg) {
          seg.for_each_prime([&](u64 p) { buffer_.push_back(p); });
        });
    next_block_ = wave_end;
    return !buffer_.empty() || next_block_ <= cfg_.limit;
  }

  SieveConfig cfg_;
  std::vector<u64> base_;
  std::vector<u64> buffer_;
  std::size_t pos_ = 0;
  u64 emitted_ = 0;
  u64 next_block_ = 3;
};

inline PrimeStream primes_up_to(u64 limit, SieveConfig cfg = {}) {
  return PrimeStream(limit, cfg);
}

// pi(x): count of primes <= x, segment popcounts only (no materialization).
inline u64 prime_count(u64 x, SieveConfig cfg = {}) {
  if (x < 2) return 0;
  cfg.limit = x;
  cfg.validate();
  u64 root = static_cast<u64>(std::sqrt(static_cast<double>(x))) + 2;
  while (root * root > x) --root;
  auto base = detail::simple_odd_primes(root);
  u64 total = 1;  // the prime 2
  ordered_block_map<u64>(
      3, x + 1, cfg.segment_size, resolve_workers(cfg.parallelism),
      [&](u64 lo, u64 hi) {
        detail::OddSegment seg;
        seg.sieve(lo, hi, base);
        return seg.count();
      },
      [&](u64, u64, u64& c) { total += c; });
  return total;
}

namespace detail {

// Upper bound for p_n: n(ln n + ln ln n) for n >= 6, small table below.
inline u64 nth_prime_bound(u64 n) {
  if (n < 6) return 13;
  double x = static_cast<double>(n);
  double b = x * (std::log(x) + std::log(std::log(x)));
  return static_cast<u64>(b) + 16;
}

}  // namespace detail

// p_n (1-based). Sizes the sieve from the standard upper bound and retries
// with 1.2x growth on shortfall, so correctness does not depend on the
// bound's tightness.
inline u64 nth_prime(u64 n, SieveConfig cfg = {}) {
  if (n == 0) throw DomainError("prime indices are 1-based: n must be >= 1");
  u64 bound = detail::nth_prime_bound(n);
  for (;;) {
    PrimeStream stream(bound, cfg);
    u64 seen = 0, last = 0;
    while (auto ip = stream.next()) {
      last = ip->p;
      if (++seen == n) return last;
    }
    bound = bound + bound / 5 + 16;
  }
}

// Growable, shared prime cache with lock-free indexed reads. Growth happens
// under a mutex; a chunked layout keeps previously published chunks stable,
// so readers may access any index below the published count while another
// thread extends the table.
class PrimeTable {
public:
  explicit PrimeTable(SieveConfig cfg = {}) : cfg_(cfg) {
    cfg_.validate();
    chunk_slots_ = std::make_unique<std::atomic<u64*>[]>(kMaxChunks);
    for (u64 i = 0; i < kMaxChunks; ++i) chunk_slots_[i].store(nullptr, std::memory_order_relaxed);
  }

  PrimeTable(const PrimeTable&) = delete;
  PrimeTable& operator=(const PrimeTable&) = delete;

  ~PrimeTable() {
    for (u64 i = 0; i < kMaxChunks; ++i) delete[] chunk_slots_[i].load(std::memory_order_relaxed);
  }

  // p_n, 1-based. n must be <= size(); use ensure_count first.
  u64 p(u64 n) const {
    u64 i = n - 1;
    return chunk_slots_[i >> kChunkBits].load(std::memory_order_acquire)[i & kChunkMask];
  }

  u64 size() const { return count_.load(std::memory_order_acquire); }
  u64 sieved_limit() const {
    std::lock_guard<std::mutex> lock(grow_mutex_);
    return limit_;
  }

  void ensure_count(u64 n) {
    if (n == 0 || size() >= n) return;
    std::lock_guard<std::mutex> lock(grow_mutex_);
    while (count_.load(std::memory_order_relaxed) < n) {
      u64 target = std::max(detail::nth_prime_bound(n), limit_ + limit_ / 5 + 16);
      extend_locked(target);
    }
  }

  void ensure_limit(u64 x) {
    std::lock_guard<std::mutex> lock(grow_mutex_);
    if (x > limit_) extend_locked(x);
  }

  // pi(x) within the sieved range; x must be <= sieved_limit().
  u64 count_leq(u64 x) const {
    u64 lo = 0, hi = size();  // count of primes <= x is the partition point
    while (lo < hi) {
      u64 mid = lo + (hi - lo) / 2;
      if (p(mid + 1) <= x) lo = mid + 1;
      else hi = mid;
    }
    return lo;
  }

private:
  static constexpr u64 kChunkBits = 20;
  static constexpr u64 kChunkMask = (u64(1) << kChunkBits) - 1;
  static constexpr u64 kMaxChunks = 1u << 14;  // 2^34 primes, far past desk scale

  void extend_locked(u64 new_limit) {
    if (new_limit <= limit_) return;
    SieveConfig cfg = cfg_;
    u64 from = limit_ + 1;
    if (from <= 2 && new_limit >= 2) append(2);
    u64 lo = std::max<u64>(from, 3);
    if (lo <= new_limit) {
      u64 root = static_cast<u64>(std::sqrt(static_cast<double>(new_limit))) + 2;
      while (root * root > new_limit) --root;
      auto base = detail::simple_odd_primes(root);
      unsigned workers = resolve_workers(cfg.parallelism);
      ordered_block_map<detail::OddSegment>(
          lo, new_limit + 1, cfg.segment_size, workers,
          [&](u64 a, u64 b) {
            detail::OddSegment seg;
            seg.sieve(a, b, base);
            return seg;
          },
          [&](u64, u64, detail::OddSegment& seg) {
            seg.for_each_prime([&](u64 q) { append(q); });
          });
    }
    limit_ = new_limit;
  }

  void append(u64 prime) {
    u64 i = count_.load(std::memory_order_relaxed);
    u64 slot = i >> kChunkBits;
    if (slot >= kMaxChunks) throw DomainError("prime table capacity exceeded");
    u64* chunk = chunk_slots_[slot].load(std::memory_order_relaxed);
    if (chunk == nullptr) {
      chunk = new u64[u64(1) << kChunkBits];
      chunk_slots_[slot].store(chunk, std::memory_order_release);
    }
    chunk[i & kChunkMask] = prime;
    count_.store(i + 1, std::memory_order_release);
  }

  SieveConfig cfg_;
  std::unique_ptr<std::atomic<u64*>[]> chunk_slots_;
  std::atomic<u64> count_{0};
  u64 limit_ = 1;
  mutable std::mutex grow_mutex_;
};

}  // namespace gapforge
