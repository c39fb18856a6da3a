#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace vlat {

using Rational = mpq_class;

/// The two scalar modes. Rationals give exact lattice arithmetic; doubles
/// compare up to a Tolerance.
template <class S>
concept Scalar = std::same_as<S, Rational> || std::same_as<S, double>;

template <Scalar S>
inline constexpr bool is_exact_v = std::same_as<S, Rational>;

/// Absolute tolerance used by floating-point comparisons. Exact mode ignores it.
struct Tolerance {
  double abs = 1e-9;
};

/// Parses "p/q", "p", or a decimal literal such as "-1.25" into a canonical
/// rational. Throws ParseError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" with q > 1, or "p" for integers.
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

template <Scalar S>
S from_rational(const Rational& q) {
  if constexpr (is_exact_v<S>) {
    return q;
  } else {
    return q.get_d();
  }
}

template <Scalar S>
S from_int(std::int64_t v) {
  if constexpr (is_exact_v<S>) {
    return Rational(static_cast<long>(v));
  } else {
    return static_cast<double>(v);
  }
}

template <Scalar S>
S abs_of(const S& a) {
  if constexpr (is_exact_v<S>) {
    return S(abs(a));
  } else {
    return std::abs(a);
  }
}

template <Scalar S>
const S& min_of(const S& a, const S& b) {
  return b < a ? b : a;
}

template <Scalar S>
const S& max_of(const S& a, const S& b) {
  return a < b ? b : a;
}

template <Scalar S>
int sgn_of(const S& a) {
  if constexpr (is_exact_v<S>) {
    return sgn(a);
  } else {
    return (a > 0) - (a < 0);
  }
}

template <Scalar S>
bool is_zero(const S& a) {
  return sgn_of(a) == 0;
}

/// a == b exactly for rationals, |a - b| <= tol.abs for doubles.
template <Scalar S>
bool approx_equal(const S& a, const S& b, Tolerance tol = {}) {
  if constexpr (is_exact_v<S>) {
    return a == b;
  } else {
    return std::abs(a - b) <= tol.abs;
  }
}

/// a <= b, with slack tol.abs in float mode.
template <Scalar S>
bool approx_leq(const S& a, const S& b, Tolerance tol = {}) {
  if constexpr (is_exact_v<S>) {
    return a <= b;
  } else {
    return a <= b + tol.abs;
  }
}

}  // namespace vlat
