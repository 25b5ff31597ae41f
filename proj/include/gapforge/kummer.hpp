#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gapforge/sequences.hpp"
#include "gapforge/verdict.hpp"

namespace gapforge {

// The a_n of the Kummer machinery, interpreted as the terms of the series
// under test. Base kinds give a_n literally; reciprocal() flips to 1/a_n,
// which keeps the two framings (terms of sum_a_n vs. the sequence whose
// reciprocals are summed) explicit at the call site.
class SeriesSpec {
public:
  enum class Kind { ReciprocalPrimes, Harmonic, Squares, Geometric, Expression, Tabulated };

  static SeriesSpec reciprocal_primes() { return SeriesSpec(Kind::ReciprocalPrimes, "reciprocal_primes"); }
  static SeriesSpec harmonic() { return SeriesSpec(Kind::Harmonic, "harmonic"); }
  static SeriesSpec squares() { return SeriesSpec(Kind::Squares, "squares"); }

  // a_n = r^{-n}; exact while n stays within the exact-power cap.
  static SeriesSpec geometric(BigRat r) {
    if (r <= 0) throw DomainError("geometric ratio must be positive");
    SeriesSpec s(Kind::Geometric, "geometric(" + rat_to_string(r) + ")");
    s.ratio_ = std::move(r);
    return s;
  }

  static SeriesSpec expression(std::string_view text) {
    SeriesSpec s(Kind::Expression, std::string(text));
    s.expr_ = parse_sequence_expr(text);
    return s;
  }

  static SeriesSpec tabulated(TabulatedSeq data, std::string label = "tabulated") {
    if (data.values.empty()) throw DomainError("tabulated series is empty");
    SeriesSpec s(Kind::Tabulated, std::move(label));
    s.table_ = std::make_shared<const TabulatedSeq>(std::move(data));
    return s;
  }

  SeriesSpec reciprocal() const {
    SeriesSpec s = *this;
    s.reciprocal_ = !s.reciprocal_;
    s.label_ = s.reciprocal_ ? "reciprocal(" + label_ + ")" : base_label_;
    return s;
  }

  bool is_reciprocal() const { return reciprocal_; }
  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }

  u64 first_valid_index() const {
    return kind_ == Kind::Tabulated ? table_->first_n : 1;
  }

  std::optional<u64> last_valid_index() const {
    if (kind_ == Kind::Tabulated) return table_->last_n();
    return std::nullopt;
  }

  EvalValue a(u64 n, PrimeTable& primes) const {
    if (n == 0) throw DomainError("series index must be >= 1");
    EvalValue v = base(n, primes);
    if (!v.is_positive()) throw PositivityError(label_, n);
    if (reciprocal_) return EvalValue::exact_int(1) / v;
    return v;
  }

private:
  SeriesSpec(Kind kind, std::string label)
      : kind_(kind), label_(std::move(label)), base_label_(label_) {}

  EvalValue base(u64 n, PrimeTable& primes) const {
    switch (kind_) {
      case Kind::ReciprocalPrimes:
        primes.ensure_count(n);
        return EvalValue::exact_int(primes.p(n));
      case Kind::Harmonic: return EvalValue::exact_int(n);
      case Kind::Squares: return EvalValue::exact(BigRat(BigInt(n) * BigInt(n)));
      case Kind::Geometric: {
        BigRat e{BigInt(n)};
        return EvalValue::pow(EvalValue::exact(ratio_), EvalValue::exact(BigRat(-e)));
      }
      case Kind::Expression: {
        ExprContext ctx{n, &primes};
        return eval_expr(*expr_, ctx);
      }
      case Kind::Tabulated: return EvalValue::exact(table_->at(n));
    }
    throw DomainError("corrupt series spec");
  }

  Kind kind_;
  std::string label_;
  std::string base_label_;
  BigRat ratio_;
  ExprPtr expr_;
  std::shared_ptr<const TabulatedSeq> table_;
  bool reciprocal_ = false;
};

struct KummerCheck {
  u64 n0 = 0;
  EvalValue c;
  u64 scanned_to = 0;
  std::optional<u64> first_violation;
  u64 holds = 0;
  u64 indeterminate = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  u64 min_margin_n = 0;

  bool violated() const { return first_violation.has_value(); }
};

// Checks b_n * (a_n / a_{n+1}) - b_{n+1} >= c over n in (n0, N]; stops at
// the first certified violation. Indices where the comparison cannot be
// certified either way are counted, not treated as violations.
inline KummerCheck kummer_inequality_scan(const SeriesSpec& a, const AuxSequenceSpec& b,
                                          u64 n0, const EvalValue& c, u64 N,
                                          PrimeTable& primes,
                                          const CompareConfig& cfg = {}) {
  if (n0 == 0) throw DomainError("n0 must be >= 1");
  if (n0 >= N) throw DomainError("scan needs n0 < N");
  if (!c.is_positive()) throw DomainError("c must be positive");
  KummerCheck check;
  check.n0 = n0;
  check.c = c;
  check.scanned_to = N;
  EvalValue a_n = a.a(n0 + 1, primes);
  EvalValue b_n = eval_q(b, n0 + 1, primes);
  for (u64 n = n0 + 1; n <= N; ++n) {
    EvalValue a_n1 = a.a(n + 1, primes);
    EvalValue b_n1 = eval_q(b, n + 1, primes);
    EvalValue t = b_n * (a_n / a_n1) - b_n1;
    Verdict v = verdict_ge(t, c, cfg);
    if (v.fails()) {
      check.first_violation = n;
      check.scanned_to = n;
      return check;
    }
    if (v.indeterminate()) {
      ++check.indeterminate;
    } else {
      ++check.holds;
      if (v.margin < check.min_margin) {
        check.min_margin = v.margin;
        check.min_margin_n = n;
      }
    }
    a_n = std::move(a_n1);
    b_n = std::move(b_n1);
  }
  return check;
}

struct KummerWitness {
  u64 n_prime = 0;
  EvalValue lhs;  // b_n * a_{n+1} - b_{n+1} * a_n
  EvalValue rhs;  // a_n
  Verdict verdict;
};

// Smallest n in [n_start, N] where b_n a_{n+1} - b_{n+1} a_n < a_n holds
// with certainty. Absence only means "not found up to N"; it refutes
// nothing, since the underlying existence statement quantifies over all n.
inline std::optional<KummerWitness> find_violation_witness(
    const SeriesSpec& a, const AuxSequenceSpec& b, u64 n_start, u64 N,
    PrimeTable& primes, const CompareConfig& cfg = {}) {
  if (n_start == 0) throw DomainError("n_start must be >= 1");
  if (n_start > N) throw EmptyRangeError("witness scan range is empty");
  EvalValue a_n = a.a(n_start, primes);
  EvalValue b_n = eval_q(b, n_start, primes);
  for (u64 n = n_start; n <= N; ++n) {
    EvalValue a_n1 = a.a(n + 1, primes);
    EvalValue b_n1 = eval_q(b, n + 1, primes);
    EvalValue lhs = b_n * a_n1 - b_n1 * a_n;
    Verdict v = verdict_less(lhs, a_n, cfg);
    if (v.holds()) return KummerWitness{n, lhs, a_n, v};
    a_n = std::move(a_n1);
    b_n = std::move(b_n1);
  }
  return std::nullopt;
}

// (M - sum_{j<=n} a_j) / a_n, the multiplier sequence that turns the
// summability bound into an equality. Exact whenever a and M are exact.
inline EvalValue canonical_b(const SeriesSpec& a, const EvalValue& M, u64 n,
                             PrimeTable& primes) {
  if (n == 0) throw DomainError("index must be >= 1");
  EvalValue partial = EvalValue::exact_int(0);
  EvalValue a_n;
  for (u64 j = 1; j <= n; ++j) {
    a_n = a.a(j, primes);
    partial = partial + a_n;
  }
  EvalValue rest = M - partial;
  if (!rest.is_positive())
    throw DomainError(strf("M does not exceed the partial sum at n=%llu",
                           static_cast<unsigned long long>(n)));
  return rest / a_n;
}

namespace detail {

// canonical_b packaged as a sequence, with the prefix sums cached so a scan
// over n is linear instead of quadratic.
class CanonicalSeq final : public SeqFn {
public:
  CanonicalSeq(SeriesSpec a, EvalValue M) : a_(std::move(a)), M_(std::move(M)) {}

  EvalValue operator()(u64 n, PrimeTable& primes) const override {
    if (n == 0) throw DomainError("index must be >= 1");
    std::lock_guard<std::mutex> lock(mu_);
    while (partials_.size() < n) {
      u64 j = partials_.size() + 1;
      EvalValue a_j = a_.a(j, primes);
      EvalValue prev = partials_.empty() ? EvalValue::exact_int(0) : partials_.back().sum;
      partials_.push_back({prev + a_j, a_j});
    }
    const auto& row = partials_[n - 1];
    EvalValue rest = M_ - row.sum;
    if (!rest.is_positive())
      throw DomainError(strf("M does not exceed the partial sum at n=%llu",
                             static_cast<unsigned long long>(n)));
    return rest / row.term;
  }

  std::string label() const override { return "kummer_canonical(" + a_.label() + ")"; }

private:
  struct Row {
    EvalValue sum;
    EvalValue term;
  };
  SeriesSpec a_;
  EvalValue M_;
  mutable std::mutex mu_;
  mutable std::vector<Row> partials_;
};

}  // namespace detail

inline AuxSequenceSpec canonical_spec(SeriesSpec a, EvalValue M) {
  return AuxSequenceSpec::custom(
      std::make_shared<detail::CanonicalSeq>(std::move(a), std::move(M)));
}

}  // namespace gapforge
