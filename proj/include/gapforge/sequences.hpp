#pragma once

#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gapforge/expr.hpp"
#include "gapforge/sieve.hpp"

namespace gapforge {

enum class BuiltinSeq { IdentityN, NLogN, FiroozbakhtWeight, TwinPiecewise };

inline const char* to_string(BuiltinSeq s) {
  switch (s) {
    case BuiltinSeq::IdentityN: return "identity_n";
    case BuiltinSeq::NLogN: return "n_log_n";
    case BuiltinSeq::FiroozbakhtWeight: return "firoozbakht_weight";
    case BuiltinSeq::TwinPiecewise: return "twin_piecewise";
  }
  return "?";
}

inline std::optional<BuiltinSeq> builtin_from_name(std::string_view name) {
  if (name == "identity_n") return BuiltinSeq::IdentityN;
  if (name == "n_log_n") return BuiltinSeq::NLogN;
  if (name == "firoozbakht_weight") return BuiltinSeq::FiroozbakhtWeight;
  if (name == "twin_piecewise") return BuiltinSeq::TwinPiecewise;
  return std::nullopt;
}

// Hook for sequences computed by other machinery (the canonical Kummer
// multiplier binds through this).
class SeqFn {
public:
  virtual ~SeqFn() = default;
  virtual EvalValue operator()(u64 n, PrimeTable& primes) const = 0;
  virtual u64 first_index() const { return 1; }
  virtual std::string label() const = 0;
};

struct TabulatedSeq {
  u64 first_n = 1;
  std::vector<BigRat> values;

  bool covers(u64 n) const { return n >= first_n && n - first_n < values.size(); }
  const BigRat& at(u64 n) const {
    if (!covers(n)) throw DomainError(strf("tabulated sequence has no value at n=%llu",
                                           static_cast<unsigned long long>(n)));
    return values[n - first_n];
  }
  u64 last_n() const { return values.empty() ? 0 : first_n + values.size() - 1; }
};

// Reads `n,q_n` rows (optional header). Indices must be consecutive and
// ascending; values are decimal literals or num/den pairs, kept exact.
inline TabulatedSeq read_tabulated_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path);
  TabulatedSeq seq;
  std::string line;
  bool first_row = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw FileError(strf("%s:%zu: expected `n,q_n`", path.c_str(), line_no));
    std::string n_text = line.substr(0, comma);
    std::string q_text = line.substr(comma + 1);
    if (first_row && (n_text.empty() || !(n_text[0] >= '0' && n_text[0] <= '9'))) {
      continue;  // header row
    }
    u64 n = 0;
    try {
      std::size_t used = 0;
      n = std::stoull(n_text, &used);
      if (used != n_text.size()) throw std::invalid_argument(n_text);
    } catch (const std::exception&) {
      throw FileError(strf("%s:%zu: bad index `%s`", path.c_str(), line_no, n_text.c_str()));
    }
    BigRat q;
    try {
      q = rat_from_string(q_text);
    } catch (const std::exception&) {
      throw FileError(strf("%s:%zu: bad value `%s`", path.c_str(), line_no, q_text.c_str()));
    }
    if (first_row) {
      if (n == 0) throw FileError(path + ": indices start at 1");
      seq.first_n = n;
      first_row = false;
    } else if (n != seq.first_n + seq.values.size()) {
      throw FileError(strf("%s:%zu: indices must be consecutive (expected %llu, got %llu)",
                           path.c_str(), line_no,
                           static_cast<unsigned long long>(seq.first_n + seq.values.size()),
                           static_cast<unsigned long long>(n)));
    }
    seq.values.push_back(std::move(q));
  }
  if (seq.values.empty()) throw FileError(path + ": no data rows");
  return seq;
}

// Declarative description of an auxiliary sequence q_n. Immutable after
// construction; evaluation is pure given a prime source.
class AuxSequenceSpec {
public:
  enum class Kind { Builtin, Expression, Tabulated, Custom };

  static AuxSequenceSpec builtin(BuiltinSeq s) {
    AuxSequenceSpec spec;
    spec.kind_ = Kind::Builtin;
    spec.builtin_ = s;
    spec.label_ = to_string(s);
    return spec;
  }

  static AuxSequenceSpec builtin(std::string_view name) {
    if (auto s = builtin_from_name(name)) return builtin(*s);
    if (name == "kummer_canonical")
      throw DomainError("kummer_canonical is constructed via canonical_spec(), not by name");
    throw DomainError("unknown builtin sequence '" + std::string(name) + "'");
  }

  static AuxSequenceSpec expression(std::string_view text) {
    AuxSequenceSpec spec;
    spec.kind_ = Kind::Expression;
    spec.expr_ = parse_sequence_expr(text);
    spec.label_ = std::string(text);
    return spec;
  }

  static AuxSequenceSpec tabulated(TabulatedSeq data, std::string label = "tabulated") {
    if (data.values.empty()) throw DomainError("tabulated sequence is empty");
    AuxSequenceSpec spec;
    spec.kind_ = Kind::Tabulated;
    spec.table_ = std::make_shared<const TabulatedSeq>(std::move(data));
    spec.label_ = std::move(label);
    return spec;
  }

  static AuxSequenceSpec tabulated_csv(const std::string& path) {
    return tabulated(read_tabulated_csv(path), path);
  }

  static AuxSequenceSpec custom(std::shared_ptr<const SeqFn> fn) {
    AuxSequenceSpec spec;
    spec.kind_ = Kind::Custom;
    spec.fn_ = std::move(fn);
    spec.label_ = spec.fn_->label();
    return spec;
  }

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }

  // Smallest n the sequence is known to be positive from. Expression
  // sequences report 1; a range scan clips leading domain holes at runtime.
  u64 first_valid_index() const {
    switch (kind_) {
      case Kind::Builtin:
        return builtin_ == BuiltinSeq::IdentityN ? 1 : 2;  // others have q_1 = 0
      case Kind::Expression: return 1;
      case Kind::Tabulated: return table_->first_n;
      case Kind::Custom: return fn_->first_index();
    }
    return 1;
  }

  // Largest representable index, if the sequence has one (tabulated data).
  std::optional<u64> last_valid_index() const {
    if (kind_ == Kind::Tabulated) return table_->last_n();
    return std::nullopt;
  }

  EvalValue raw(u64 n, PrimeTable& primes) const {
    if (n == 0) throw DomainError("sequence index must be >= 1");
    switch (kind_) {
      case Kind::Builtin: return eval_builtin(n, primes);
      case Kind::Expression: {
        ExprContext ctx{n, &primes};
        return eval_expr(*expr_, ctx);
      }
      case Kind::Tabulated: return EvalValue::exact(table_->at(n));
      case Kind::Custom: return (*fn_)(n, primes);
    }
    throw DomainError("corrupt sequence spec");
  }

private:
  EvalValue eval_builtin(u64 n, PrimeTable& primes) const {
    EvalValue nn = EvalValue::exact_int(n);
    switch (builtin_) {
      case BuiltinSeq::IdentityN: return nn;
      case BuiltinSeq::NLogN: return nn * EvalValue::ln(nn);
      case BuiltinSeq::FiroozbakhtWeight: {
        primes.ensure_count(n);
        EvalValue p = EvalValue::exact_int(primes.p(n));
        EvalValue e = EvalValue::exact(BigRat(BigInt(n - 1), BigInt(n)));  // 1 - 1/n
        return EvalValue::pow(p, e) * EvalValue::ln(nn);
      }
      case BuiltinSeq::TwinPiecewise: {
        EvalValue lead = n % 2 == 0 ? nn : EvalValue::exact_int(n - 1);
        return lead * EvalValue::ln(nn);
      }
    }
    throw DomainError("corrupt sequence spec");
  }

  Kind kind_ = Kind::Builtin;
  BuiltinSeq builtin_ = BuiltinSeq::IdentityN;
  ExprPtr expr_;
  std::shared_ptr<const TabulatedSeq> table_;
  std::shared_ptr<const SeqFn> fn_;
  std::string label_;
};

// q_n, with the positivity contract enforced: a non-positive value is
// reported (never clamped) and carries the offending index.
inline EvalValue eval_q(const AuxSequenceSpec& spec, u64 n, PrimeTable& primes) {
  EvalValue q = spec.raw(n, primes);
  if (!q.is_positive()) throw PositivityError(spec.label(), n);
  return q;
}

// u_n = (q_{n+1} - q_n + 1) / q_n
inline EvalValue eval_u(const AuxSequenceSpec& spec, u64 n, PrimeTable& primes) {
  EvalValue qn = eval_q(spec, n, primes);
  EvalValue qn1 = eval_q(spec, n + 1, primes);
  return (qn1 - qn + EvalValue::exact_int(1)) / qn;
}

// Q_n = p_n * u_n
inline EvalValue eval_Q(const AuxSequenceSpec& spec, u64 n, PrimeTable& primes) {
  EvalValue u = eval_u(spec, n, primes);
  primes.ensure_count(n);
  return EvalValue::exact_int(primes.p(n)) * u;
}

}  // namespace gapforge
