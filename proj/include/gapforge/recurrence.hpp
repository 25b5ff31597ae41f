#pragma once

#include <optional>
#include <vector>

#include "gapforge/sequences.hpp"
#include "gapforge/verdict.hpp"

namespace gapforge {

enum class RunStatus { Running, PositivityFailed, Completed };

inline const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Running: return "running";
    case RunStatus::PositivityFailed: return "positivity_failed";
    case RunStatus::Completed: return "completed";
  }
  return "?";
}

struct RecurrenceRun {
  BigRat q1, q2;
  std::vector<BigRat> values;   // q_1, q_2, ... (a failing value is included)
  RunStatus status = RunStatus::Running;
  u64 fail_index = 0;           // set when status == PositivityFailed
  u64 completed_n = 0;          // set when status == Completed
  std::vector<BigRat> Q_trace;  // Q_n over pairs of consecutive positive values
};

// Iterates q_{n+2} = [ (p_n/p_{n+1}) (q_{n+1}-q_n+1)/q_n + 1 ] q_{n+1} - 1,
// the equality member of the recurrence family, in exact rationals. That
// member keeps Q_n constant, so Q_trace doubles as a self-check: any drift
// is an arithmetic bug. Numerators and denominators grow quickly; the bit
// budget turns runaway growth into a typed stop.
inline RecurrenceRun iterate_equality(BigRat q1, BigRat q2, u64 N, PrimeTable& primes,
                                      u64 bit_budget = 1'000'000) {
  if (!(q1 > 0) || !(q2 > 0)) throw DomainError("seed values must be positive");
  if (N == 0) throw DomainError("N must be >= 1");
  RecurrenceRun run;
  run.q1 = q1;
  run.q2 = q2;
  run.values.push_back(q1);
  if (N >= 2) run.values.push_back(q2);
  primes.ensure_count(N);

  auto Q_of = [&](u64 n, const BigRat& qn, const BigRat& qn1) {
    return BigRat(BigInt(primes.p(n))) * (qn1 - qn + 1) / qn;
  };

  while (run.values.size() < N) {
    u64 k = run.values.size() - 1;  // next value is q_{k+2}
    const BigRat& qk = run.values[k - 1];
    const BigRat& qk1 = run.values[k];
    run.Q_trace.push_back(Q_of(k, qk, qk1));
    BigRat ratio(BigInt(primes.p(k)), BigInt(primes.p(k + 1)));
    BigRat next = (ratio * ((qk1 - qk + 1) / qk) + 1) * qk1 - 1;
    u64 bits = rat_bit_length(next);
    if (bits > bit_budget) throw BitBudgetError(k + 2, bits, bit_budget);
    run.values.push_back(next);
    if (!(next > 0)) {
      run.status = RunStatus::PositivityFailed;
      run.fail_index = k + 2;
      return run;
    }
  }
  if (run.values.size() >= 2) {
    u64 last = run.values.size() - 1;  // pair (q_{N-1}, q_N)
    run.Q_trace.push_back(Q_of(last, run.values[last - 1], run.values[last]));
  }
  run.status = RunStatus::Completed;
  run.completed_n = run.values.size();
  return run;
}

struct MonotonePair {
  u64 n = 0;
  double Q_n = 0;
  double Q_next = 0;
};

struct MonotoneAudit {
  bool nonincreasing = true;
  std::optional<MonotonePair> violation;  // first n with Q_{n+1} > Q_n
  u64 first_n = 0;
  u64 checked_pairs = 0;
  u64 indeterminate = 0;
};

// Audits Q_{n+1} <= Q_n over [first evaluable n, N-1] for a declared
// sequence. A violation must be certified (outside the guard band or exact);
// unresolved comparisons are counted and skipped.
inline MonotoneAudit q_monotone_audit(const AuxSequenceSpec& spec, u64 N,
                                      PrimeTable& primes,
                                      const CompareConfig& cfg = {}) {
  if (N < 2) throw DomainError("need N >= 2 to compare consecutive Q");
  MonotoneAudit audit;
  u64 start = spec.first_valid_index();
  for (;; ++start) {
    if (start + 1 > N) throw EmptyRangeError("sequence has no evaluable index in range");
    try {
      eval_Q(spec, start, primes);
      break;
    } catch (const PositivityError&) {
    } catch (const DomainError&) {
    }
  }
  audit.first_n = start;
  EvalValue prev = eval_Q(spec, start, primes);
  for (u64 n = start; n + 1 <= N; ++n) {
    EvalValue next = eval_Q(spec, n + 1, primes);
    Verdict v = verdict_less(prev, next, cfg);
    ++audit.checked_pairs;
    if (v.holds()) {
      audit.nonincreasing = false;
      audit.violation = MonotonePair{n, prev.value(), next.value()};
      return audit;
    }
    if (v.indeterminate()) ++audit.indeterminate;
    prev = next;
  }
  return audit;
}

// Same audit over the exact Q trace of a finished run.
inline MonotoneAudit q_monotone_audit(const RecurrenceRun& run, u64 N) {
  MonotoneAudit audit;
  audit.first_n = 1;
  u64 pairs = run.Q_trace.size();
  if (pairs > N) pairs = N;
  for (u64 i = 0; i + 1 < pairs; ++i) {
    ++audit.checked_pairs;
    if (run.Q_trace[i] < run.Q_trace[i + 1]) {
      audit.nonincreasing = false;
      audit.violation = MonotonePair{i + 1, rat_to_double(run.Q_trace[i]),
                                     rat_to_double(run.Q_trace[i + 1])};
      return audit;
    }
  }
  return audit;
}

}  // namespace gapforge
