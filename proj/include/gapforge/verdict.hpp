#pragma once

#include <cmath>
#include <string>

#include "gapforge/eval.hpp"

namespace gapforge {

enum class VerdictState { Holds, Fails, Indeterminate };

inline const char* to_string(VerdictState s) {
  switch (s) {
    case VerdictState::Holds: return "holds";
    case VerdictState::Fails: return "fails";
    case VerdictState::Indeterminate: return "indet";
  }
  return "?";
}

// Outcome of a single inequality check. margin is the signed distance
// rhs - lhs (positive when the strict inequality lhs < rhs holds).
struct Verdict {
  VerdictState state = VerdictState::Indeterminate;
  double margin = 0.0;
  bool exact = false;

  bool holds() const { return state == VerdictState::Holds; }
  bool fails() const { return state == VerdictState::Fails; }
  bool indeterminate() const { return state == VerdictState::Indeterminate; }
};

struct CompareConfig {
  // Relative guard-band floor for double comparisons; anything inside the
  // band (propagated error + this floor) is Indeterminate.
  double guard_rel = 1e-9;
  // Floor for the long double retry of in-band comparisons.
  double guard_rel_ext = 1e-13;
};

namespace detail {

template <typename T>
inline int banded_compare(Lane<T> l, Lane<T> r, double floor_rel) {
  T diff = r.value - l.value;
  T scale = std::max(std::abs(l.value), std::abs(r.value));
  T band = l.abs_bound() + r.abs_bound() + static_cast<T>(floor_rel) * std::max(scale, T(1));
  if (!(std::abs(diff) <= band)) return diff > 0 ? 1 : -1;
  return 0;  // inside the band
}

}  // namespace detail

// Verdict on the strict inequality lhs < rhs. Exact operands compare
// exactly; float operands get a guarded double comparison with a long
// double retry before conceding Indeterminate.
inline Verdict verdict_less(const EvalValue& lhs, const EvalValue& rhs,
                            const CompareConfig& cfg = {}) {
  Verdict v;
  if (lhs.is_exact() && rhs.is_exact()) {
    BigRat diff = rhs.rational() - lhs.rational();
    v.exact = true;
    v.margin = rat_to_double(diff);
    v.state = diff > 0 ? VerdictState::Holds : VerdictState::Fails;
    return v;
  }
  v.exact = false;
  v.margin = rhs.value() - lhs.value();
  int c = detail::banded_compare(lhs.dlane(), rhs.dlane(), cfg.guard_rel);
  if (c == 0)  // retry once at extended precision
    c = detail::banded_compare(lhs.xlane(), rhs.xlane(), cfg.guard_rel_ext);
  v.state = c > 0 ? VerdictState::Holds
                  : (c < 0 ? VerdictState::Fails : VerdictState::Indeterminate);
  return v;
}

// Verdict on lhs >= rhs; margin is lhs - rhs.
inline Verdict verdict_ge(const EvalValue& lhs, const EvalValue& rhs,
                          const CompareConfig& cfg = {}) {
  Verdict less = verdict_less(lhs, rhs, cfg);
  Verdict v;
  v.exact = less.exact;
  v.margin = -less.margin;
  // not (lhs < rhs) is exactly lhs >= rhs, so the states invert
  switch (less.state) {
    case VerdictState::Holds: v.state = VerdictState::Fails; break;
    case VerdictState::Fails: v.state = VerdictState::Holds; break;
    default: v.state = VerdictState::Indeterminate; break;
  }
  return v;
}

}  // namespace gapforge
