#pragma once

#include <optional>
#include <vector>

#include "gapforge/gaps.hpp"
#include "gapforge/parallel.hpp"
#include "gapforge/sequences.hpp"
#include "gapforge/verdict.hpp"

namespace gapforge {

// One scanned index: the gap comparison g_n < Q_n plus the equivalent
// ratio-form comparison p_{n+1} q_n < p_n (q_{n+1}+1).
struct XiRecord {
  u64 n = 0;
  u64 p = 0;
  u64 p_next = 0;
  u64 g = 0;
  EvalValue Q;
  Verdict verdict;        // g_n < Q_n
  Verdict ratio_verdict;  // p_{n+1} q_n < p_n (q_{n+1}+1)
};

struct XiScanConfig {
  CompareConfig compare;
  unsigned parallelism = 0;  // 0 = use all hardware threads
  u64 block = 8192;          // fixed work-grid granularity, independent of workers
};

struct XiScanSummary {
  u64 requested_start = 0;
  u64 effective_start = 0;  // after clipping leading domain holes
  u64 end = 0;
  u64 holds = 0;
  u64 fails = 0;
  u64 indeterminate = 0;
  u64 exact_count = 0;
  std::optional<u64> largest_holds;
};

namespace detail {

inline Verdict xi_gap_verdict(const AuxSequenceSpec& spec, u64 n, u64 g,
                              PrimeTable& primes, const CompareConfig& cfg,
                              EvalValue* q_out) {
  EvalValue Q = eval_Q(spec, n, primes);
  if (q_out) *q_out = Q;
  return verdict_less(EvalValue::exact_int(g), Q, cfg);
}

inline Verdict xi_ratio_verdict(const AuxSequenceSpec& spec, u64 n,
                                PrimeTable& primes, const CompareConfig& cfg) {
  EvalValue qn = eval_q(spec, n, primes);
  EvalValue qn1 = eval_q(spec, n + 1, primes);
  primes.ensure_count(n + 1);
  EvalValue lhs = EvalValue::exact_int(primes.p(n + 1)) * qn;
  EvalValue rhs = EvalValue::exact_int(primes.p(n)) * (qn1 + EvalValue::exact_int(1));
  return verdict_less(lhs, rhs, cfg);
}

}  // namespace detail

// Verdict on the ratio form p_{n+1}/p_n < (q_{n+1}+1)/q_n, evaluated
// denominator-cleared so rational sequences stay exact.
inline Verdict ratio_check(const AuxSequenceSpec& spec, u64 n, PrimeTable& primes,
                           const CompareConfig& cfg = {}) {
  if (n == 0) throw DomainError("index must be >= 1");
  return detail::xi_ratio_verdict(spec, n, primes, cfg);
}

// Verdict on the subtraction form q_n p_{n+1} - q_{n+1} p_n < p_n, the shape
// the main inequality is usually quoted in. Algebraically identical to
// g_n < Q_n; kept as a separate evaluation path for cross-checking.
inline Verdict cross_check(const AuxSequenceSpec& spec, u64 n, PrimeTable& primes,
                           const CompareConfig& cfg = {}) {
  if (n == 0) throw DomainError("index must be >= 1");
  EvalValue qn = eval_q(spec, n, primes);
  EvalValue qn1 = eval_q(spec, n + 1, primes);
  primes.ensure_count(n + 1);
  EvalValue p = EvalValue::exact_int(primes.p(n));
  EvalValue p1 = EvalValue::exact_int(primes.p(n + 1));
  return verdict_less(qn * p1 - qn1 * p, p, cfg);
}

inline XiRecord xi_record(const AuxSequenceSpec& spec, u64 n, PrimeTable& primes,
                          const CompareConfig& cfg = {}) {
  GapRecord gr = gap_record(primes, n);
  XiRecord rec;
  rec.n = n;
  rec.p = gr.p;
  rec.p_next = gr.p_next;
  rec.g = gr.g;
  rec.verdict = detail::xi_gap_verdict(spec, n, gr.g, primes, cfg, &rec.Q);
  rec.ratio_verdict = detail::xi_ratio_verdict(spec, n, primes, cfg);
  return rec;
}

// Scans [n_start, n_end], clipping leading indices where the sequence is not
// yet defined/positive (the clip is reported in the summary; holes after the
// first evaluable index propagate as errors). Records are emitted to
// `consume` in index order regardless of parallelism: the work grid is fixed
// blocks of cfg.block indices, mapped in waves and consumed in order.
template <typename Consumer>
XiScanSummary xi_scan(const AuxSequenceSpec& spec, u64 n_start, u64 n_end,
                      PrimeTable& primes, Consumer&& consume,
                      const XiScanConfig& cfg = {}) {
  if (n_start == 0) throw DomainError("n_start must be >= 1");
  if (n_start > n_end) throw EmptyRangeError("xi scan range is empty");
  XiScanSummary sum;
  sum.requested_start = n_start;
  sum.end = n_end;

  u64 start = std::max(n_start, spec.first_valid_index());
  for (;; ++start) {
    if (start > n_end) throw EmptyRangeError("sequence has no evaluable index in range");
    try {
      eval_u(spec, start, primes);
      break;
    } catch (const PositivityError&) {
    } catch (const DomainError&) {
    }
  }
  sum.effective_start = start;

  primes.ensure_count(n_end + 2);

  struct Block {
    std::vector<XiRecord> records;
  };
  ordered_block_map<Block>(
      start, n_end + 1, cfg.block, cfg.parallelism,
      [&](u64 lo, u64 hi) {
        Block blk;
        blk.records.reserve(hi - lo);
        for (u64 n = lo; n < hi; ++n)
          blk.records.push_back(xi_record(spec, n, primes, cfg.compare));
        return blk;
      },
      [&](u64, u64, Block& blk) {
        for (XiRecord& rec : blk.records) {
          if (rec.verdict.holds()) {
            ++sum.holds;
            sum.largest_holds = rec.n;
          } else if (rec.verdict.fails()) {
            ++sum.fails;
          } else {
            ++sum.indeterminate;
          }
          if (rec.verdict.exact) ++sum.exact_count;
          consume(rec);
        }
      });
  return sum;
}

struct DensityBlock {
  u64 lo = 0;  // inclusive
  u64 hi = 0;  // inclusive
  u64 holds = 0;
  u64 fails = 0;
  u64 indeterminate = 0;
};

struct DensityReport {
  u64 N = 0;
  u64 block = 0;
  u64 effective_start = 0;
  std::vector<DensityBlock> blocks;
  u64 holds = 0;
  u64 fails = 0;
  u64 indeterminate = 0;
  std::optional<u64> largest_holds;
};

// Per-block verdict counts over [1, N]; indices clipped at the head simply
// do not contribute to their block.
inline DensityReport xi_density(const AuxSequenceSpec& spec, u64 N, u64 block,
                                PrimeTable& primes, const XiScanConfig& cfg = {}) {
  if (block == 0) throw DomainError("block must be >= 1");
  if (N < block) throw DomainError("need N >= block");
  DensityReport rep;
  rep.N = N;
  rep.block = block;
  rep.blocks.resize((N + block - 1) / block);
  for (std::size_t i = 0; i < rep.blocks.size(); ++i) {
    rep.blocks[i].lo = i * block + 1;
    rep.blocks[i].hi = std::min<u64>((i + 1) * block, N);
  }
  XiScanSummary sum = xi_scan(
      spec, 1, N, primes,
      [&](const XiRecord& rec) {
        DensityBlock& b = rep.blocks[(rec.n - 1) / block];
        if (rec.verdict.holds()) ++b.holds;
        else if (rec.verdict.fails()) ++b.fails;
        else ++b.indeterminate;
      },
      cfg);
  rep.effective_start = sum.effective_start;
  rep.holds = sum.holds;
  rep.fails = sum.fails;
  rep.indeterminate = sum.indeterminate;
  rep.largest_holds = sum.largest_holds;
  return rep;
}

}  // namespace gapforge
