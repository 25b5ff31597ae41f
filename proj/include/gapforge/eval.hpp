#pragma once

#include <cmath>
#include <limits>

#include "gapforge/bigint.hpp"
#include "gapforge/common.hpp"

namespace gapforge {

// One floating lane: a value plus an accumulated relative error bound.
// The bound is a deliberate over-estimate: every operation adds one
// epsilon-scale term on top of whatever the operands carried.
template <typename T>
struct Lane {
  T value = 0;
  T rel = 0;

  static constexpr T eps() { return std::numeric_limits<T>::epsilon(); }
  T abs_bound() const {
    T b = std::abs(value) * rel;
    return std::isfinite(b) ? b : std::numeric_limits<T>::infinity();
  }
};

template <typename T>
inline Lane<T> lane_add(Lane<T> a, Lane<T> b) {
  Lane<T> r;
  r.value = a.value + b.value;
  T abs_err = a.abs_bound() + b.abs_bound();
  r.rel = (r.value == 0 ? (abs_err == 0 ? T(0) : std::numeric_limits<T>::infinity())
                        : abs_err / std::abs(r.value)) +
          Lane<T>::eps();
  return r;
}

template <typename T>
inline Lane<T> lane_sub(Lane<T> a, Lane<T> b) {
  b.value = -b.value;
  return lane_add(a, b);
}

template <typename T>
inline Lane<T> lane_mul(Lane<T> a, Lane<T> b) {
  return {a.value * b.value, a.rel + b.rel + Lane<T>::eps()};
}

template <typename T>
inline Lane<T> lane_div(Lane<T> a, Lane<T> b) {
  return {a.value / b.value, a.rel + b.rel + Lane<T>::eps()};
}

template <typename T>
inline Lane<T> lane_ln(Lane<T> a) {
  Lane<T> r;
  r.value = std::log(a.value);
  // d(ln a) = da/a, so the operand's relative bound lands as an absolute one.
  T abs_err = a.rel;
  r.rel = (r.value == 0 ? (abs_err == 0 ? T(0) : std::numeric_limits<T>::infinity())
                        : abs_err / std::abs(r.value)) +
          2 * Lane<T>::eps();
  return r;
}

// a^b = exp(b ln a): d/a^b = b da/a + ln(a) db
template <typename T>
inline Lane<T> lane_pow(Lane<T> a, Lane<T> b) {
  Lane<T> r;
  r.value = std::pow(a.value, b.value);
  r.rel = std::abs(b.value) * a.rel + std::abs(std::log(std::abs(a.value))) * b.rel +
          4 * Lane<T>::eps();
  return r;
}

// A sequence value: exact rational when no ln / non-integer power touched it,
// otherwise a float carried in two precisions (double, plus a long double
// lane used to retry comparisons that land inside the guard band).
class EvalValue {
public:
  EvalValue() : exact_(true), rat_(0) {}

  static EvalValue exact(BigRat r) {
    EvalValue v;
    v.exact_ = true;
    v.rat_ = std::move(r);
    return v;
  }
  static EvalValue exact_int(u64 n) { return exact(BigRat(BigInt(n))); }
  static EvalValue approx(double value, double rel = 0.0) {
    EvalValue v;
    v.exact_ = false;
    v.d_ = {value, rel};
    v.x_ = {static_cast<long double>(value), static_cast<long double>(rel)};
    return v;
  }

  bool is_exact() const { return exact_; }
  const BigRat& rational() const { return rat_; }

  double value() const { return exact_ ? rat_to_double(rat_) : d_.value; }
  double rel_bound() const { return exact_ ? 0.0 : d_.rel; }

  Lane<double> dlane() const {
    if (exact_) return {rat_to_double(rat_), Lane<double>::eps()};
    return d_;
  }
  Lane<long double> xlane() const {
    if (exact_) return {rat_to_ldouble(rat_), Lane<long double>::eps()};
    return x_;
  }

  bool is_positive() const { return exact_ ? rat_ > 0 : d_.value > 0; }

  friend EvalValue operator+(const EvalValue& a, const EvalValue& b) {
    if (a.exact_ && b.exact_) return exact(a.rat_ + b.rat_);
    return from_lanes(lane_add(a.dlane(), b.dlane()), lane_add(a.xlane(), b.xlane()));
  }
  friend EvalValue operator-(const EvalValue& a, const EvalValue& b) {
    if (a.exact_ && b.exact_) return exact(a.rat_ - b.rat_);
    return from_lanes(lane_sub(a.dlane(), b.dlane()), lane_sub(a.xlane(), b.xlane()));
  }
  friend EvalValue operator*(const EvalValue& a, const EvalValue& b) {
    if (a.exact_ && b.exact_) return exact(a.rat_ * b.rat_);
    return from_lanes(lane_mul(a.dlane(), b.dlane()), lane_mul(a.xlane(), b.xlane()));
  }
  friend EvalValue operator/(const EvalValue& a, const EvalValue& b) {
    if (a.exact_ && b.exact_) {
      if (b.rat_ == 0) throw DomainError("division by zero");
      return exact(a.rat_ / b.rat_);
    }
    if (!b.exact_ && b.d_.value == 0) throw DomainError("division by zero");
    return from_lanes(lane_div(a.dlane(), b.dlane()), lane_div(a.xlane(), b.xlane()));
  }

  static EvalValue ln(const EvalValue& a) {
    double v = a.value();
    if (v <= 0) throw DomainError(strf("ln of non-positive value %.17g", v));
    // ln 1 = 0 with no error at all; keeping it exact avoids an unbounded
    // relative error on a zero-valued lane.
    if (a.exact_ && a.rat_ == 1) return exact_int(0);
    return from_lanes(lane_ln(a.dlane()), lane_ln(a.xlane()));
  }

  // Integer exponents on exact bases stay exact (up to a sanity cap on the
  // exponent); everything else drops to the float lanes.
  static EvalValue pow(const EvalValue& base, const EvalValue& expo) {
    static constexpr i64 kMaxExactExp = 1 << 16;
    if (base.exact_ && expo.exact_ && rat_is_integer(expo.rat_)) {
      BigInt e = rat_num(expo.rat_);
      if (boost::multiprecision::abs(e) <= kMaxExactExp) {
        unsigned k = static_cast<unsigned>(boost::multiprecision::abs(e).convert_to<u64>());
        BigInt num = boost::multiprecision::pow(rat_num(base.rat_), k);
        BigInt den = boost::multiprecision::pow(rat_den(base.rat_), k);
        if (e < 0) {
          if (num == 0) throw DomainError("zero to a negative power");
          return exact(BigRat(den, num));
        }
        return exact(BigRat(num, den));
      }
    }
    double bv = base.value();
    double ev = expo.value();
    bool integer_exp = expo.exact_ ? rat_is_integer(expo.rat_)
                                   : (std::nearbyint(ev) == ev && std::isfinite(ev));
    if (bv < 0 && !integer_exp)
      throw DomainError("negative base with non-integer exponent");
    if (bv == 0 && ev < 0) throw DomainError("zero to a negative power");
    return from_lanes(lane_pow(base.dlane(), expo.dlane()),
                      lane_pow(base.xlane(), expo.xlane()));
  }

private:
  static EvalValue from_lanes(Lane<double> d, Lane<long double> x) {
    EvalValue v;
    v.exact_ = false;
    v.d_ = d;
    v.x_ = x;
    return v;
  }

  bool exact_;
  BigRat rat_;
  Lane<double> d_{};
  Lane<long double> x_{};
};

}  // namespace gapforge
