#pragma once

// Canonical form for a triple of parabolic generators: conjugate so that the
// first fixes infinity with translation length +2, the second fixes 0, the
// third fixes a positive real x. Coordinates (x, y, z) are x together with
// the Ford strengths of the second and third generator.

#include <array>
#include <stdexcept>

#include "fourps/ford.hpp"
#include "fourps/moebius.hpp"
#include "fourps/scalar.hpp"

namespace fourps {

struct NotParabolic : std::domain_error {
  NotParabolic() : std::domain_error("generator is not parabolic") {}
};

struct ElementaryConfiguration : std::domain_error {
  ElementaryConfiguration() : std::domain_error("generators share a fixed point") {}
};

template <class S>
struct ParabolicTriple {
  S x, y, z;

  ParabolicTriple(const S& x_, const S& y_, const S& z_) : x(x_), y(y_), z(z_) {
    if (!definitely_greater(x, S(0)) || !definitely_greater(y, S(0)) || !definitely_greater(z, S(0)))
      throw std::domain_error("triple coordinates must be positive");
  }
};

using RTriple = ParabolicTriple<Rational>;

// A = [[1,2],[0,1]], B = [[1,0],[-2/y,1]], C = [[1-2x/z, 2x^2/z],[-2/z, 1+2x/z]]
template <class S>
std::array<Mat2<S>, 3> matrices_from_triple(const ParabolicTriple<S>& t) {
  const S one(1), two(2), zero(0);
  const Mat2<S> a = mat2<S>(one, two, zero, one);
  const Mat2<S> b = mat2<S>(one, zero, -two / t.y, one);
  const Mat2<S> c = mat2<S>(one - two * t.x / t.z, two * t.x * t.x / t.z, -two / t.z, one + two * t.x / t.z);
  return {a, b, c};
}

// Result of normalization. The conjugator is a projective map (nonzero
// determinant, entries up to common scale); reflection marks an
// orientation-reversing one. inverted[i] records a pass to the inverse.
// Conjugating the input by the map and inverting as flagged reproduces
// matrices_from_triple(triple) exactly, up to PSL sign.
template <class S>
struct NormalizeResult {
  ParabolicTriple<S> triple;
  Mat2<S> conjugator;
  bool reflection = false;
  std::array<bool, 3> inverted{false, false, false};
};

namespace detail {

// canonical projective representative over the rationals: clear denominators,
// divide by the content, make the first nonzero entry positive
inline void canonicalize_projective(RMat2& x) {
  BigInt lcm_den = 1;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(x(i, j)));
  BigInt gcd_num = 0;
  std::array<BigInt, 4> ints;
  int k = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Rational scaled = x(i, j) * Rational(lcm_den);
      ints[k] = boost::multiprecision::numerator(scaled);
      gcd_num = boost::multiprecision::gcd(gcd_num, ints[k]);
      ++k;
    }
  if (gcd_num == 0) gcd_num = 1;
  int first_sign = 0;
  for (const BigInt& v : ints) {
    if (v != 0) {
      first_sign = v < 0 ? -1 : 1;
      break;
    }
  }
  if (first_sign == 0) first_sign = 1;
  k = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      x(i, j) = Rational(ints[k] * first_sign) / Rational(gcd_num);
      ++k;
    }
}

inline void canonicalize_projective(AMat2&) {}

}  // namespace detail

// Normalizes an ordered triple of parabolic det-1 matrices with three
// distinct fixed points. Roles follow input order: the first generator is
// sent to infinity, the second to 0, the third to a positive real.
template <class S>
NormalizeResult<S> normalize(const std::array<Mat2<S>, 3>& raw) {
  for (const Mat2<S>& m : raw) {
    if (!is_unimodular(m)) throw std::invalid_argument("normalize: determinant is not 1");
    if (classify(m) != IsometryClass::Parabolic) throw NotParabolic{};
  }
  std::array<BoundaryPoint<S>, 3> fix;
  for (int i = 0; i < 3; ++i) fix[i] = *fixed_points(raw[i]).single;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (boundary_equal(fix[i], fix[j])) throw ElementaryConfiguration{};

  std::array<Mat2<S>, 3> cur = raw;
  Mat2<S> conj = Mat2<S>::Identity();
  std::array<bool, 3> inverted{false, false, false};

  auto apply = [&](const Mat2<S>& x) {
    for (Mat2<S>& m : cur) m = conjugate(m, x);
    conj = (x * conj).eval();
  };

  // send the first fixed point to infinity (w -> -1/(w - f), det 1)
  if (!fix[0].infinite) apply(mat2<S>(S(0), S(-1), S(1), -fix[0].v));

  // translation length to +-2
  {
    const Mat2<S> a = parabolic_rep(cur[0]);
    const S tau = a(0, 1);  // a == [[1, tau], [0, 1]] in the trace-positive representative
    apply(mat2<S>(S(2), S(0), S(0), abs_val(tau)));
    if (sign_of(parabolic_rep(cur[0])(0, 1)) < 0) {
      cur[0] = inverse_unimodular(cur[0]);
      inverted[0] = true;
    }
  }

  // second fixed point to 0
  {
    const BoundaryPoint<S> fb = *fixed_points(cur[1]).single;
    apply(mat2<S>(S(1), -fb.v, S(0), S(1)));
  }

  // third fixed point positive, reflecting in the 0-infinity line if needed
  {
    const BoundaryPoint<S> fc = *fixed_points(cur[2]).single;
    if (sign_of(fc.v) < 0) {
      apply(mat2<S>(S(-1), S(0), S(0), S(1)));
      // reflection reverses the translation and the strength signs
      cur[0] = inverse_unimodular(cur[0]);
      inverted[0] = !inverted[0];
    }
  }

  // strength signs: in the trace-positive representative the lower-left
  // entries of B and C must be negative
  for (int i = 1; i < 3; ++i) {
    if (sign_of(parabolic_rep(cur[i])(1, 0)) > 0) {
      cur[i] = inverse_unimodular(cur[i]);
      inverted[i] = true;
    }
  }

  const Mat2<S> b = parabolic_rep(cur[1]);
  const Mat2<S> c = parabolic_rep(cur[2]);
  const S y = S(-2) / b(1, 0);
  const S z = S(-2) / c(1, 0);
  const S x = (c(0, 0) - c(1, 1)) / (S(2) * c(1, 0));
  NormalizeResult<S> out{ParabolicTriple<S>(x, y, z), conj, false, inverted};

  // paranoia: the rebuilt matrices must coincide with the canonical forms
  const auto rebuilt = matrices_from_triple(out.triple);
  for (int i = 0; i < 3; ++i) {
    if (!psl_equal(cur[i], rebuilt[i])) throw std::logic_error("normalize: canonical form mismatch");
  }

  out.reflection = sign_of(determinant(conj)) < 0;
  out.conjugator = conj;
  detail::canonicalize_projective(out.conjugator);
  return out;
}

}  // namespace fourps
