#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>

#include "invmine/core.hpp"

namespace invmine {

/// Exact arithmetic over the core Rational. Intermediate products run in
/// 128-bit; results that no longer fit 64 bits throw ScaleError, which is
/// acceptable for the tiny models this path re-verifies.
namespace detail {

inline long long checked_narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw ScaleError("rational arithmetic overflow");
  return static_cast<long long>(v);
}

inline Rational make_rational(__int128 num, __int128 den) {
  if (den == 0) throw InputError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num;
  __int128 b = den;
  while (b != 0) {
    __int128 r = a % b;
    a = b;
    b = r;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  Rational out;
  out.num = checked_narrow(num);
  out.den = checked_narrow(den);
  return out;
}

}  // namespace detail

inline Rational operator+(const Rational& a, const Rational& b) {
  return detail::make_rational(static_cast<__int128>(a.num) * b.den +
                                   static_cast<__int128>(b.num) * a.den,
                               static_cast<__int128>(a.den) * b.den);
}
inline Rational operator-(const Rational& a, const Rational& b) {
  return detail::make_rational(static_cast<__int128>(a.num) * b.den -
                                   static_cast<__int128>(b.num) * a.den,
                               static_cast<__int128>(a.den) * b.den);
}
inline Rational operator*(const Rational& a, const Rational& b) {
  return detail::make_rational(static_cast<__int128>(a.num) * b.num,
                               static_cast<__int128>(a.den) * b.den);
}
inline Rational operator/(const Rational& a, const Rational& b) {
  if (b.num == 0) throw InputError("rational division by zero");
  return detail::make_rational(static_cast<__int128>(a.num) * b.den,
                               static_cast<__int128>(a.den) * b.num);
}
inline Rational operator-(const Rational& a) { return detail::make_rational(-a.num, a.den); }
inline Rational& operator+=(Rational& a, const Rational& b) { return a = a + b; }
inline Rational& operator-=(Rational& a, const Rational& b) { return a = a - b; }
inline Rational& operator*=(Rational& a, const Rational& b) { return a = a * b; }
inline Rational& operator/=(Rational& a, const Rational& b) { return a = a / b; }

inline bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}
inline bool operator>(const Rational& a, const Rational& b) { return b < a; }
inline bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
inline bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }
inline bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

inline Rational abs(const Rational& a) { return a.num < 0 ? -a : a; }

/// Exact conversion; only integral doubles are accepted (model data is integral).
inline Rational rational_from_double(double v) {
  if (v != std::round(v)) throw ScaleError("non-integral coefficient in exact re-solve");
  return Rational(static_cast<long long>(std::llround(v)), 1);
}

}  // namespace invmine

namespace Eigen {
template <>
struct NumTraits<invmine::Rational> : GenericNumTraits<invmine::Rational> {
  using Real = invmine::Rational;
  using NonInteger = invmine::Rational;
  using Nested = invmine::Rational;
  using Literal = long long;
  static inline Real epsilon() { return invmine::Rational(0, 1); }
  static inline Real dummy_precision() { return invmine::Rational(0, 1); }
  static inline int digits10() { return 18; }
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 20,
    MulCost = 20
  };
};
}  // namespace Eigen
