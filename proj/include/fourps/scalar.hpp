#pragma once

// Scalar backends. The exact backend is an arbitrary-precision rational and
// is the only one used for verdict-grade decisions; the approximate backend
// carries a tolerance and refuses to decide comparisons that land inside its
// tolerance band.

#include "fourps/detail/byte_container_fix.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace fourps {

// expression templates off: plain value semantics keep template argument
// deduction predictable across the generic scalar code
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                               boost::multiprecision::et_off>;

enum class Ordering { Less, Equal, Greater, Indeterminate };

// Thrown when the approximate backend is asked for a verdict-grade comparison
// inside its tolerance band. decide() converts it into an Undetermined
// verdict; everywhere else it propagates to the caller.
struct ToleranceBand : std::runtime_error {
  ToleranceBand() : std::runtime_error("comparison fell inside the tolerance band") {}
};

// Approximate real with attached tolerance. Arithmetic keeps the larger
// tolerance of the two operands; plain constants carry tolerance zero.
struct Approx {
  double value = 0.0;
  double tol = 0.0;

  Approx() = default;
  Approx(double v) : value(v) {}  // NOLINT: implicit, Eigen builds Scalar(0)
  Approx(int v) : value(v) {}     // NOLINT
  Approx(double v, double t) : value(v), tol(t) {}
};

inline Approx operator+(const Approx& a, const Approx& b) { return {a.value + b.value, std::max(a.tol, b.tol)}; }
inline Approx operator-(const Approx& a, const Approx& b) { return {a.value - b.value, std::max(a.tol, b.tol)}; }
inline Approx operator*(const Approx& a, const Approx& b) { return {a.value * b.value, std::max(a.tol, b.tol)}; }
inline Approx operator/(const Approx& a, const Approx& b) { return {a.value / b.value, std::max(a.tol, b.tol)}; }
inline Approx operator-(const Approx& a) { return {-a.value, a.tol}; }
inline Approx& operator+=(Approx& a, const Approx& b) { a = a + b; return a; }
inline Approx& operator-=(Approx& a, const Approx& b) { a = a - b; return a; }
inline Approx& operator*=(Approx& a, const Approx& b) { a = a * b; return a; }
inline Approx& operator/=(Approx& a, const Approx& b) { a = a / b; return a; }

// Bitwise comparisons, used only by Eigen plumbing. Semantic comparisons go
// through compare() below.
inline bool operator==(const Approx& a, const Approx& b) { return a.value == b.value; }
inline bool operator!=(const Approx& a, const Approx& b) { return a.value != b.value; }

inline Rational abs_val(const Rational& a) { return a < 0 ? Rational(-a) : a; }
inline Approx abs_val(const Approx& a) { return {std::fabs(a.value), a.tol}; }

inline Ordering compare(const Rational& a, const Rational& b) {
  if (a < b) return Ordering::Less;
  if (b < a) return Ordering::Greater;
  return Ordering::Equal;
}

inline Ordering compare(const Approx& a, const Approx& b) {
  const double band = std::max(a.tol, b.tol);
  const double diff = a.value - b.value;
  if (std::fabs(diff) <= band) return Ordering::Indeterminate;
  return diff < 0 ? Ordering::Less : Ordering::Greater;
}

// Verdict-grade predicates. Exact scalars never throw; approximate scalars
// throw ToleranceBand instead of deciding inside the band.
template <class S>
bool definitely_less(const S& a, const S& b) {
  switch (compare(a, b)) {
    case Ordering::Less: return true;
    case Ordering::Indeterminate: throw ToleranceBand{};
    default: return false;
  }
}

template <class S>
bool definitely_greater(const S& a, const S& b) {
  switch (compare(a, b)) {
    case Ordering::Greater: return true;
    case Ordering::Indeterminate: throw ToleranceBand{};
    default: return false;
  }
}

template <class S>
bool definitely_equal(const S& a, const S& b) {
  switch (compare(a, b)) {
    case Ordering::Equal: return true;
    case Ordering::Indeterminate: throw ToleranceBand{};
    default: return false;
  }
}

template <class S>
bool definitely_leq(const S& a, const S& b) {
  switch (compare(a, b)) {
    case Ordering::Less:
    case Ordering::Equal: return true;
    case Ordering::Indeterminate: throw ToleranceBand{};
    default: return false;
  }
}

template <class S>
bool definitely_geq(const S& a, const S& b) {
  return definitely_leq(b, a);
}

template <class S>
bool is_zero(const S& a) {
  return definitely_equal(a, S(0));
}

// -1, 0 or +1; throws ToleranceBand when the sign is not resolvable.
template <class S>
int sign_of(const S& a) {
  switch (compare(a, S(0))) {
    case Ordering::Less: return -1;
    case Ordering::Greater: return 1;
    case Ordering::Equal: return 0;
    default: throw ToleranceBand{};
  }
}

template <class S>
struct scalar_is_exact : std::true_type {};
template <>
struct scalar_is_exact<Approx> : std::false_type {};

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const Approx& a) { return a.value; }

template <class S>
S scalar_from_rational(const Rational& q, double tol);
template <>
inline Rational scalar_from_rational<Rational>(const Rational& q, double) { return q; }
template <>
inline Approx scalar_from_rational<Approx>(const Rational& q, double tol) { return {to_double(q), tol}; }

// Parses "p/q", plain integers and finite decimal strings into an exact
// rational; throws std::invalid_argument on anything else.
inline Rational parse_rational(const std::string& text) {
  auto fail = [&]() -> Rational { throw std::invalid_argument("not a rational literal: '" + text + "'"); };
  std::size_t i = 0;
  const std::size_t n = text.size();
  bool negative = false;
  if (i < n && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  if (i >= n) return fail();

  BigInt num = 0;
  BigInt den = 1;
  bool any_digit = false;
  while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
    num = num * 10 + (text[i] - '0');
    any_digit = true;
    ++i;
  }
  if (i < n && text[i] == '.') {
    ++i;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
      num = num * 10 + (text[i] - '0');
      den *= 10;
      any_digit = true;
      ++i;
    }
  } else if (i < n && text[i] == '/') {
    ++i;
    BigInt d = 0;
    bool d_digit = false;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
      d = d * 10 + (text[i] - '0');
      d_digit = true;
      ++i;
    }
    if (!d_digit || d == 0) return fail();
    den = d;
  }
  if (!any_digit || i != n) return fail();
  Rational q(num, den);
  return negative ? Rational(-q) : q;
}

inline std::string format_rational(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline std::string format_scalar(const Rational& q) { return format_rational(q); }
inline std::string format_scalar(const Approx& a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", a.value);
  return buf;
}

// Total number of bits across numerator and denominator; used by the
// algorithm's resource guard.
inline std::size_t bit_size(const Rational& q) {
  using boost::multiprecision::msb;
  const BigInt num = abs(boost::multiprecision::numerator(q));
  const BigInt den = boost::multiprecision::denominator(q);
  std::size_t bits = 1;
  if (num != 0) bits += static_cast<std::size_t>(msb(num)) + 1;
  if (den != 0) bits += static_cast<std::size_t>(msb(den)) + 1;
  return bits;
}
inline std::size_t bit_size(const Approx&) { return 64; }

// Exact square root when the rational is a perfect square.
inline bool rational_sqrt(const Rational& q, Rational& out) {
  using boost::multiprecision::sqrt;
  if (q < 0) return false;
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  const BigInt rn = sqrt(num);
  const BigInt rd = sqrt(den);
  if (rn * rn != num || rd * rd != den) return false;
  out = Rational(rn, rd);
  return true;
}

}  // namespace fourps
