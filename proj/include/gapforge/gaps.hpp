#pragma once

#include <vector>

#include "gapforge/sieve.hpp"

namespace gapforge {

// One prime gap: g = p_next - p. Carries both endpoint primes because every
// downstream bound needs them anyway.
struct GapRecord {
  u64 n;       // 1-based index
  u64 p;       // p_n
  u64 p_next;  // p_{n+1}
  u64 g;       // p_next - p

  friend bool operator==(const GapRecord&, const GapRecord&) = default;
};

inline GapRecord gap_record(PrimeTable& primes, u64 n) {
  if (n == 0) throw DomainError("gap indices are 1-based: n must be >= 1");
  primes.ensure_count(n + 1);
  u64 p = primes.p(n);
  u64 q = primes.p(n + 1);
  return GapRecord{n, p, q, q - p};
}

// g_n = p_{n+1} - p_n
inline u64 gap(PrimeTable& primes, u64 n) { return gap_record(primes, n).g; }

// Calls fn(GapRecord) for every n in [n_start, n_end], in increasing n.
template <typename Fn>
void for_each_gap(PrimeTable& primes, u64 n_start, u64 n_end, Fn&& fn) {
  if (n_start == 0) throw DomainError("gap indices are 1-based: n_start must be >= 1");
  if (n_start > n_end) throw EmptyRangeError("gap range is empty: n_start > n_end");
  primes.ensure_count(n_end + 1);
  u64 p = primes.p(n_start);
  for (u64 n = n_start; n <= n_end; ++n) {
    u64 q = primes.p(n + 1);
    fn(GapRecord{n, p, q, q - p});
    p = q;
  }
}

inline std::vector<GapRecord> gap_stream(PrimeTable& primes, u64 n_start, u64 n_end) {
  std::vector<GapRecord> out;
  out.reserve(n_end >= n_start ? n_end - n_start + 1 : 0);
  for_each_gap(primes, n_start, n_end, [&](const GapRecord& r) { out.push_back(r); });
  return out;
}

}  // namespace gapforge
