#pragma once

#include <bit>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "gapforge/gaps.hpp"
#include "gapforge/sequences.hpp"
#include "gapforge/verdict.hpp"
#include "gapforge/xi.hpp"

namespace gapforge {

// ---- g_n/p_n < 2/n, tested as integers ----

inline Verdict two_over_n_pair_check(u64 n, u64 p, u64 p_next) {
  u128 lhs = u128(p_next - p) * n;
  u128 rhs = u128(2) * p;
  Verdict v;
  v.exact = true;
  v.margin = rhs >= lhs ? double(u64(rhs - lhs)) : -double(u64(lhs - rhs));
  v.state = lhs < rhs ? VerdictState::Holds : VerdictState::Fails;
  return v;
}

inline Verdict two_over_n_check(PrimeTable& primes, u64 n) {
  GapRecord r = gap_record(primes, n);
  return two_over_n_pair_check(n, r.p, r.p_next);
}

// ---- Firoozbakht: p_{n+1}^{1/(n+1)} < p_n^{1/n} ----
//
// Tested as n ln p_{n+1} < (n+1) ln p_n in floats; only a guard-band hit
// escalates to the integer inequality p_{n+1}^n < p_n^{n+1}. A bit-length
// prescreen keeps the integer path affordable: the long double logs locate
// both bit lengths to far better than one bit, so the full powering runs
// only when the two sides are within a couple of bits of each other.
inline Verdict firoozbakht_pair_check(u64 n, u64 p, u64 p_next,
                                      const CompareConfig& cfg = {}) {
  Verdict v;
  v.exact = false;
  {
    Lane<double> lhs = lane_mul(Lane<double>{double(n), 0.0},
                                lane_ln(Lane<double>{double(p_next), Lane<double>::eps()}));
    Lane<double> rhs = lane_mul(Lane<double>{double(n + 1), 0.0},
                                lane_ln(Lane<double>{double(p), Lane<double>::eps()}));
    // banded_compare reports the sign of rhs - lhs once outside the band
    int cmp = detail::banded_compare(lhs, rhs, cfg.guard_rel);
    if (cmp != 0) {
      v.state = cmp > 0 ? VerdictState::Holds : VerdictState::Fails;
      v.margin = rhs.value - lhs.value;
      return v;
    }
  }
  long double lhs = static_cast<long double>(n) * std::log(static_cast<long double>(p_next));
  long double rhs = static_cast<long double>(n + 1) * std::log(static_cast<long double>(p));
  {
    Lane<long double> ll{lhs, 3 * Lane<long double>::eps()};
    Lane<long double> rr{rhs, 3 * Lane<long double>::eps()};
    int cmp = detail::banded_compare(ll, rr, cfg.guard_rel_ext);
    if (cmp != 0) {
      v.state = cmp > 0 ? VerdictState::Holds : VerdictState::Fails;
      v.margin = double(rhs - lhs);
      return v;
    }
  }
  v.exact = true;
  v.margin = double(rhs - lhs);
  long double b_lhs = static_cast<long double>(n) * std::log2(static_cast<long double>(p_next));
  long double b_rhs = static_cast<long double>(n + 1) * std::log2(static_cast<long double>(p));
  if (b_lhs + 2 < b_rhs) {
    v.state = VerdictState::Holds;
  } else if (b_rhs + 2 < b_lhs) {
    v.state = VerdictState::Fails;
  } else {
    BigInt a = boost::multiprecision::pow(BigInt(p_next), unsigned(n));
    BigInt b = boost::multiprecision::pow(BigInt(p), unsigned(n + 1));
    v.state = a < b ? VerdictState::Holds : VerdictState::Fails;
  }
  return v;
}

inline Verdict firoozbakht_check(PrimeTable& primes, u64 n,
                                 const CompareConfig& cfg = {}) {
  if (n == 0) throw DomainError("index must be >= 1");
  primes.ensure_count(n + 1);
  return firoozbakht_pair_check(n, primes.p(n), primes.p(n + 1), cfg);
}

// Unconditional big-integer comparison, for cross-validating the float path.
inline Verdict firoozbakht_check_exact(u64 n, u64 p, u64 p_next) {
  BigInt a = boost::multiprecision::pow(BigInt(p_next), unsigned(n));
  BigInt b = boost::multiprecision::pow(BigInt(p), unsigned(n + 1));
  Verdict v;
  v.exact = true;
  v.state = a < b ? VerdictState::Holds : VerdictState::Fails;
  v.margin = double(static_cast<long double>(n + 1) * std::log(static_cast<long double>(p)) -
                    static_cast<long double>(n) * std::log(static_cast<long double>(p_next)));
  return v;
}

struct FiroozbakhtScan {
  u64 limit = 0;
  u64 checked = 0;
  std::vector<u64> violations;
  u64 exact_fallbacks = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  u64 min_margin_n = 0;
};

// Walks all prime pairs with p_{n+1} <= limit off a fresh stream, so the
// scan runs at sieve speed without retaining the whole prime table.
inline FiroozbakhtScan firoozbakht_scan(u64 limit, const SieveConfig& scfg = {},
                                        const CompareConfig& cfg = {}) {
  FiroozbakhtScan scan;
  scan.limit = limit;
  SieveConfig sc = scfg;
  sc.limit = limit;
  PrimeStream stream(limit, sc);
  auto prev = stream.next();
  while (auto cur = stream.next()) {
    u64 n = prev->n;
    Verdict v = firoozbakht_pair_check(n, prev->p, cur->p, cfg);
    ++scan.checked;
    if (v.exact) ++scan.exact_fallbacks;
    if (!v.holds()) scan.violations.push_back(n);
    if (v.margin < scan.min_margin) {
      scan.min_margin = v.margin;
      scan.min_margin_n = n;
    }
    prev = cur;
  }
  return scan;
}

// ---- Gap bound reports ----

struct BoundReport {
  u64 n = 0;
  u64 g = 0;
  EvalValue rhs;
  Verdict verdict;
};

// g_n < ln(p_n)^2 - ln(p_n) - 1, stated for n >= 10.
inline BoundReport kourbatov_bound_check(PrimeTable& primes, u64 n,
                                         const CompareConfig& cfg = {}) {
  if (n < 10) throw DomainError("bound is stated for n >= 10");
  GapRecord r = gap_record(primes, n);
  EvalValue L = EvalValue::ln(EvalValue::exact_int(r.p));
  EvalValue rhs = L * L - L - EvalValue::exact_int(1);
  return {n, r.g, rhs, verdict_less(EvalValue::exact_int(r.g), rhs, cfg)};
}

// g_n < (n+1)ln(n+1) - n ln(n) + 1.
inline BoundReport sharp_bound_check(PrimeTable& primes, u64 n,
                                     const CompareConfig& cfg = {}) {
  if (n == 0) throw DomainError("index must be >= 1");
  GapRecord r = gap_record(primes, n);
  EvalValue nn = EvalValue::exact_int(n);
  EvalValue n1 = EvalValue::exact_int(n + 1);
  EvalValue rhs = n1 * EvalValue::ln(n1) - nn * EvalValue::ln(nn) + EvalValue::exact_int(1);
  // n = 1 contributes nothing from the n ln n term; ln(1) is exactly zero.
  return {n, r.g, rhs, verdict_less(EvalValue::exact_int(r.g), rhs, cfg)};
}

// ---- Bound comparison: sharp rhs vs ln(p)^2 - ln(p) - b ----

struct ComparisonRow {
  u64 n = 0;
  double sharp_rhs = 0;
  double kourbatov_rhs = 0;
  bool sharp_smaller = false;
};

struct ComparisonSummary {
  u64 n_start = 0;
  u64 n_end = 0;
  u64 rows = 0;
  u64 not_smaller = 0;
  std::optional<u64> last_not_smaller;
};

template <typename Consumer>
ComparisonSummary bound_comparison_scan(u64 n_start, u64 n_end, const EvalValue& b,
                                        PrimeTable& primes, Consumer&& consume,
                                        const CompareConfig& cfg = {}) {
  if (n_start < 10) throw DomainError("comparison is stated for n >= 10");
  if (n_start > n_end) throw EmptyRangeError("comparison range is empty");
  primes.ensure_count(n_end);
  ComparisonSummary sum;
  sum.n_start = n_start;
  sum.n_end = n_end;
  for (u64 n = n_start; n <= n_end; ++n) {
    EvalValue nn = EvalValue::exact_int(n);
    EvalValue n1 = EvalValue::exact_int(n + 1);
    EvalValue sharp =
        n1 * EvalValue::ln(n1) - nn * EvalValue::ln(nn) + EvalValue::exact_int(1);
    EvalValue L = EvalValue::ln(EvalValue::exact_int(primes.p(n)));
    EvalValue kour = L * L - L - b;
    Verdict v = verdict_less(sharp, kour, cfg);
    ComparisonRow row{n, sharp.value(), kour.value(), v.holds()};
    if (!row.sharp_smaller) {
      ++sum.not_smaller;
      sum.last_not_smaller = n;
    }
    ++sum.rows;
    consume(row);
  }
  return sum;
}

// ---- Classical checks: n ln n < p_n, p_n ~ n ln n, p_n^{1/n} -> 1 ----

struct ClassicalCheckpoint {
  u64 n = 0;
  u64 p = 0;
  double ratio = 0;  // p_n / (n ln n)
  double root = 0;   // p_n^{1/n}
};

struct ClassicalReport {
  u64 n_end = 0;
  u64 checked = 0;
  std::vector<u64> violations;     // indices with n ln n >= p_n (expected none)
  u64 indeterminate = 0;           // interval too tight to resolve (expected none)
  double max_ratio = 0;            // max over n >= 2 of (n ln n)/p_n, a margin diagnostic
  u64 max_ratio_n = 0;
  std::vector<ClassicalCheckpoint> checkpoints;
};

// n ln n < p_n certified via a widened long double interval; the margin is
// so large that the interval always resolves, but an unresolved compare is
// still reported rather than guessed.
inline Verdict rosser_pair_check(u64 n, u64 p, const CompareConfig& cfg = {}) {
  if (n == 1) {  // 1 ln 1 = 0 < p, no float work needed
    Verdict v;
    v.exact = true;
    v.margin = double(p);
    v.state = VerdictState::Holds;
    return v;
  }
  Lane<long double> nn{static_cast<long double>(n), 0.0L};
  Lane<long double> lhs = lane_mul(nn, lane_ln(Lane<long double>{static_cast<long double>(n),
                                                                 Lane<long double>::eps()}));
  Lane<long double> rhs{static_cast<long double>(p), Lane<long double>::eps()};
  Verdict v;
  v.exact = false;
  v.margin = double(rhs.value - lhs.value);
  int cmp = detail::banded_compare(lhs, rhs, cfg.guard_rel_ext);
  v.state = cmp > 0 ? VerdictState::Holds
                    : (cmp < 0 ? VerdictState::Fails : VerdictState::Indeterminate);
  return v;
}

inline ClassicalReport classical_checks(u64 n_end, PrimeTable& primes,
                                        const CompareConfig& cfg = {}) {
  if (n_end < 3) throw DomainError("need n_end >= 3");
  primes.ensure_count(n_end);
  ClassicalReport rep;
  rep.n_end = n_end;
  u64 next_cp = 1;
  for (u64 n = 1; n <= n_end; ++n) {
    u64 p = primes.p(n);
    Verdict v = rosser_pair_check(n, p, cfg);
    ++rep.checked;
    if (v.fails()) rep.violations.push_back(n);
    else if (v.indeterminate()) ++rep.indeterminate;
    if (n >= 2) {
      double r = double(n) * std::log(double(n)) / double(p);
      if (r > rep.max_ratio) {
        rep.max_ratio = r;
        rep.max_ratio_n = n;
      }
    }
    if (n == next_cp || n == n_end) {
      double lnn = std::log(double(n));
      rep.checkpoints.push_back({n, p, n >= 2 ? double(p) / (double(n) * lnn) : 0.0,
                                 std::pow(double(p), 1.0 / double(n))});
      while (next_cp <= n) next_cp *= 2;
    }
  }
  return rep;
}

// ---- Liminf trackers ----

enum class LiminfMetric {
  GapOverPScaled,             // n g_n / (2 p_n)
  GapOverLog,                 // g_n / ln p_n
  GapOverLogEps,              // g_n / ln(p_n)^{1+eps}
  GapOverGpy,                 // g_n / (sqrt(ln p_n) ln(ln p_n)^2)
  FiroozbakhtRatio,           // p_{n+1}^{1/(n+1)} / p_n^{1/n}
  ReciprocalPrimePartialSum,  // sum_{j<=n} 1/p_j (running sum, not a min)
  HypNU,                      // n u_n along the holding indices of a sequence
  HypGpyU,                    // (n sqrt(ln n)/ln(ln n)^2) u_n along the same
};

inline const char* to_string(LiminfMetric m) {
  switch (m) {
    case LiminfMetric::GapOverPScaled: return "gap_over_p_scaled";
    case LiminfMetric::GapOverLog: return "gap_over_log";
    case LiminfMetric::GapOverLogEps: return "gap_over_log_eps";
    case LiminfMetric::GapOverGpy: return "gap_over_gpy";
    case LiminfMetric::FiroozbakhtRatio: return "firoozbakht_ratio";
    case LiminfMetric::ReciprocalPrimePartialSum: return "reciprocal_prime_partial_sum";
    case LiminfMetric::HypNU: return "hyp_n_u";
    case LiminfMetric::HypGpyU: return "hyp_gpy_u";
  }
  return "?";
}

inline std::optional<LiminfMetric> liminf_metric_from_name(std::string_view name) {
  for (LiminfMetric m :
       {LiminfMetric::GapOverPScaled, LiminfMetric::GapOverLog, LiminfMetric::GapOverLogEps,
        LiminfMetric::GapOverGpy, LiminfMetric::FiroozbakhtRatio,
        LiminfMetric::ReciprocalPrimePartialSum, LiminfMetric::HypNU, LiminfMetric::HypGpyU})
    if (name == to_string(m)) return m;
  return std::nullopt;
}

struct LiminfSpec {
  LiminfMetric metric = LiminfMetric::GapOverLog;
  double eps = 0.1;                    // GapOverLogEps only
  std::optional<AuxSequenceSpec> seq;  // HypNU / HypGpyU only

  bool is_sum() const { return metric == LiminfMetric::ReciprocalPrimePartialSum; }
  bool along_xi() const {
    return metric == LiminfMetric::HypNU || metric == LiminfMetric::HypGpyU;
  }
};

struct LiminfRow {
  u64 n = 0;
  double value = 0;  // the metric at this index
  double stat = 0;   // running min (or running sum)
  u64 arg = 0;       // argmin (or the index itself for the sum)
};

struct LiminfResult {
  LiminfMetric metric = LiminfMetric::GapOverLog;
  u64 n_end = 0;
  u64 processed = 0;
  bool is_sum = false;
  double stat = 0;
  u64 arg = 0;
};

// Running min (or sum) with checkpoint rows at geometrically spaced indices
// plus the final contributing index. The hypothesis metrics only take values
// on indices where the sequence's gap inequality holds; other indices
// contribute nothing.
template <typename CheckpointFn>
LiminfResult liminf_track(const LiminfSpec& spec, u64 n_end, PrimeTable& primes,
                          CheckpointFn&& checkpoint, u64 checkpoint_factor = 2,
                          const CompareConfig& cfg = {}) {
  if (n_end == 0) throw DomainError("n_end must be >= 1");
  if (checkpoint_factor < 2) throw DomainError("checkpoint factor must be >= 2");
  if (spec.metric == LiminfMetric::GapOverLogEps && !(spec.eps > 0))
    throw DomainError("eps must be positive");
  if (spec.along_xi() && !spec.seq)
    throw DomainError("hypothesis metrics need a sequence");

  primes.ensure_count(n_end + 2);
  LiminfResult res;
  res.metric = spec.metric;
  res.n_end = n_end;
  res.is_sum = spec.is_sum();
  res.stat = res.is_sum ? 0.0 : std::numeric_limits<double>::infinity();

  u64 start = 1;
  if (spec.along_xi()) {
    start = std::max<u64>(spec.seq->first_valid_index(),
                          spec.metric == LiminfMetric::HypGpyU ? 2 : 1);
    for (;; ++start) {
      if (start > n_end) throw EmptyRangeError("sequence has no evaluable index in range");
      try {
        eval_u(*spec.seq, start, primes);
        break;
      } catch (const PositivityError&) {
      } catch (const DomainError&) {
      }
    }
  }

  u64 next_cp = 1;
  LiminfRow last{};
  bool last_emitted = true;
  for (u64 n = start; n <= n_end; ++n) {
    double value = 0;
    switch (spec.metric) {
      case LiminfMetric::GapOverPScaled: {
        GapRecord r = gap_record(primes, n);
        value = double(n) * double(r.g) / (2.0 * double(r.p));
        break;
      }
      case LiminfMetric::GapOverLog: {
        GapRecord r = gap_record(primes, n);
        value = double(r.g) / std::log(double(r.p));
        break;
      }
      case LiminfMetric::GapOverLogEps: {
        GapRecord r = gap_record(primes, n);
        value = double(r.g) / std::pow(std::log(double(r.p)), 1.0 + spec.eps);
        break;
      }
      case LiminfMetric::GapOverGpy: {
        GapRecord r = gap_record(primes, n);
        double L = std::log(double(r.p));
        double ll = std::log(L);
        value = double(r.g) / (std::sqrt(L) * ll * ll);
        break;
      }
      case LiminfMetric::FiroozbakhtRatio: {
        value = std::pow(double(primes.p(n + 1)), 1.0 / double(n + 1)) /
                std::pow(double(primes.p(n)), 1.0 / double(n));
        break;
      }
      case LiminfMetric::ReciprocalPrimePartialSum:
        value = 1.0 / double(primes.p(n));
        break;
      case LiminfMetric::HypNU:
      case LiminfMetric::HypGpyU: {
        GapRecord r = gap_record(primes, n);
        Verdict v = detail::xi_gap_verdict(*spec.seq, n, r.g, primes, cfg, nullptr);
        if (!v.holds()) continue;  // the final row is flushed after the loop
        double u = eval_u(*spec.seq, n, primes).value();
        if (spec.metric == LiminfMetric::HypNU) {
          value = double(n) * u;
        } else {
          double lnn = std::log(double(n));
          double ll = std::log(lnn);
          value = double(n) * std::sqrt(lnn) / (ll * ll) * u;
        }
        break;
      }
    }
    ++res.processed;
    if (res.is_sum) {
      res.stat += value;
      res.arg = n;
    } else if (value < res.stat || res.processed == 1) {
      res.stat = value;
      res.arg = n;
    }
    last = {n, res.is_sum ? res.stat : value, res.stat, res.arg};
    last_emitted = false;
    if (n >= next_cp || n == n_end) {
      checkpoint(last);
      last_emitted = true;
      while (next_cp <= n) {
        u64 grown = next_cp * checkpoint_factor;
        if (grown <= next_cp) {  // overflow guard
          next_cp = n_end + 1;
          break;
        }
        next_cp = grown;
      }
    }
  }
  if (!last_emitted) checkpoint(last);
  return res;
}

// ---- Dyadic block bookkeeping for "holds somewhere in every block" ----

class DyadicHoldsTracker {
public:
  void add(u64 n, bool holds) {
    if (n == 0) return;
    unsigned k = std::bit_width(n) - 1;
    ++total_[k];
    if (holds) ++holds_[k];
  }

  struct Block {
    unsigned k = 0;
    u64 holds = 0;
    u64 total = 0;
  };

  // Blocks [2^k, 2^{k+1}) that lie entirely inside [lo, hi].
  std::vector<Block> complete_blocks(u64 lo, u64 hi) const {
    std::vector<Block> out;
    for (unsigned k = 0; k < 64; ++k) {
      u64 bl = u64(1) << k;
      if (bl < lo) continue;
      if (k == 63 || (u64(1) << (k + 1)) - 1 > hi) break;
      out.push_back({k, holds_[k], total_[k]});
    }
    return out;
  }

private:
  u64 holds_[64] = {};
  u64 total_[64] = {};
};

}  // namespace gapforge
