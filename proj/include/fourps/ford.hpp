#pragma once

// Ford-domain geometry: isometric circles, Ford strength, inner/outer
// Ford-distance, ping-pong certificates and Jorgensen's inequality.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fourps/moebius.hpp"
#include "fourps/scalar.hpp"

namespace fourps {

struct FixesInfinity : std::domain_error {
  FixesInfinity() : std::domain_error("transformation fixes infinity (lower-left entry is zero)") {}
};

template <class S>
struct Interval {
  S lo{}, hi{};
};

template <class S>
Interval<S> make_interval(const S& a, const S& b) {
  return definitely_leq(a, b) ? Interval<S>{a, b} : Interval<S>{b, a};
}

template <class S>
struct FordData {
  S strength;          // Euclidean diameter 2/|c| of one isometric circle
  S inner_distance;    // (|Tr| - 2)/|c|, gap between the two circles
  S outer_distance;    // (|Tr| + 2)/|c|, span across both circles
  S symmetry_center;   // (a - d)/(2c)
  Interval<S> footprint_fwd;  // endpoints -d/c +- 1/c (isometric circle of G)
  Interval<S> footprint_inv;  // endpoints  a/c +- 1/c (isometric circle of G^-1)
};

template <class S>
FordData<S> ford_data(const Mat2<S>& g) {
  const S c = g(1, 0);
  if (compare(c, S(0)) != Ordering::Less && compare(c, S(0)) != Ordering::Greater) throw FixesInfinity{};
  const S a = g(0, 0), d = g(1, 1);
  const S abs_c = abs_val(c);
  const S abs_tr = abs_val(trace(g));
  const S radius = S(1) / abs_c;
  FordData<S> out;
  out.strength = S(2) / abs_c;
  out.inner_distance = (abs_tr - S(2)) / abs_c;
  out.outer_distance = (abs_tr + S(2)) / abs_c;
  out.symmetry_center = (a - d) / (S(2) * c);
  const S center_fwd = -d / c;
  const S center_inv = a / c;
  out.footprint_fwd = Interval<S>{center_fwd - radius, center_fwd + radius};
  out.footprint_inv = Interval<S>{center_inv - radius, center_inv + radius};
  return out;
}

template <class S>
Mat2<S> commutator(const Mat2<S>& m1, const Mat2<S>& m2) {
  return (m1 * m2 * inverse_unimodular(m1) * inverse_unimodular(m2)).eval();
}

// |Tr(M1)^2 - 4| + |Tr([M1,M2]) - 2| >= 1. A false answer certifies that
// <M1,M2> is not a non-elementary discrete group.
template <class S>
bool jorgensen_holds(const Mat2<S>& m1, const Mat2<S>& m2) {
  const S t = trace(m1);
  const S sum = abs_val(t * t - S(4)) + abs_val(trace(commutator(m1, m2)) - S(2));
  return definitely_geq(sum, S(1));
}

// Outer Ford-distance < 2: together with the standard translation by 2 the
// element generates a free discrete group with no elliptics.
template <class S>
bool free_discrete_by_ford(const Mat2<S>& g) {
  if (classify(g) == IsometryClass::Elliptic) throw std::domain_error("free_discrete_by_ford: elliptic input");
  return definitely_less(ford_data(g).outer_distance, S(2));
}

// | |Tr G| - |2c| | >= 2, the sign-normalized product criterion: true iff
// AG, A^-1 G, G^-1 A and G^-1 A^-1 are all non-elliptic.
template <class S>
bool products_nonelliptic(const Mat2<S>& g) {
  if (classify(g) == IsometryClass::Elliptic) throw std::domain_error("products_nonelliptic: elliptic input");
  const S c = g(1, 0);
  if (compare(c, S(0)) != Ordering::Less && compare(c, S(0)) != Ordering::Greater) throw FixesInfinity{};
  const S t = abs_val(trace(g));
  return definitely_geq(abs_val(t - S(2) * abs_val(c)), S(2));
}

// When the Ford strength 2/|c| exceeds 1 there is an integer n with A^n G
// elliptic; returns the signed n of least magnitude, absent otherwise.
template <class S>
std::optional<std::int64_t> elliptic_power_exists(const Mat2<S>& g) {
  const S c = g(1, 0);
  if (compare(c, S(0)) != Ordering::Less && compare(c, S(0)) != Ordering::Greater) throw FixesInfinity{};
  const S strength = S(2) / abs_val(c);
  if (!definitely_greater(strength, S(1))) return std::nullopt;
  const S t = trace(g);
  // |Tr + 2cn| is monotone in |n| beyond this bound.
  const double limit = to_double((abs_val(t) + S(2)) / (S(2) * abs_val(c))) + 2.0;
  for (std::int64_t k = 1; k <= static_cast<std::int64_t>(limit); ++k) {
    for (const std::int64_t n : {k, -k}) {
      const S val = abs_val(t + S(2) * c * scalar_from_rational<S>(Rational(n), 0.0));
      if (definitely_less(val, S(2))) return n;
    }
  }
  return std::nullopt;
}

template <class S>
struct Geodesic {
  BoundaryPoint<S> e1, e2;  // distinct; one endpoint at infinity = vertical line
};

// Per-generator ping-pong half-space pair, encoded by boundary footprints.
// "minus" is the side whose complement the generator maps into "plus".
template <class S>
struct HalfSpacePair {
  Interval<S> minus, plus;
};

// Footprint certificate: half-space pairs for the finite-fixed-point
// generators plus the wall positions of the translation's strip. Disjointness
// of all footprints inside one strip (tangency at a boundary point allowed)
// certifies that the generators play ping-pong, hence generate a free
// discrete group.
template <class S>
struct PingPongCertificate {
  S strip_left{}, strip_right{};
  std::vector<HalfSpacePair<S>> pairs;
};

namespace detail {

template <class S>
void append_reduced_pieces(const Interval<S>& iv, const S& left, const S& right,
                           std::vector<Interval<S>>& out, bool& ok) {
  // shift by the even integer that puts lo into [left, left+2)
  const double approx_shift = (to_double(iv.lo) - to_double(left)) / 2.0;
  auto k = static_cast<std::int64_t>(std::floor(approx_shift));
  S lo = iv.lo - scalar_from_rational<S>(Rational(2 * k), 0.0);
  // floating point seeding, then exact correction
  while (definitely_less(lo, left)) lo = lo + S(2);
  while (definitely_geq(lo, left + S(2))) lo = lo - S(2);
  const S width = iv.hi - iv.lo;
  const S hi = lo + width;
  if (definitely_leq(hi, right)) {
    out.push_back(Interval<S>{lo, hi});
    return;
  }
  if (definitely_leq(hi, left + S(2))) {
    // lands in the gap between the right wall and the next period: it pokes
    // into the translation's plus half-space
    ok = false;
    return;
  }
  // straddles the period boundary: split
  if (definitely_greater(lo, right)) {
    ok = false;
    return;
  }
  out.push_back(Interval<S>{lo, right});
  const S wrapped_hi = hi - S(2);
  if (definitely_greater(wrapped_hi, left)) out.push_back(Interval<S>{left, wrapped_hi});
  if (definitely_greater(wrapped_hi, right)) ok = false;
}

}  // namespace detail

// True iff all footprints fit inside one strip of the translation, pairwise
// disjoint after reduction mod the translation length 2. Tangency (a shared
// single boundary point) counts as disjoint: that is the cusped
// configuration. Malformed intervals are rejected with std::invalid_argument.
template <class S>
bool verify_pingpong(const PingPongCertificate<S>& cert) {
  const S left = cert.strip_left;
  const S right = cert.strip_right;
  if (!definitely_less(left, right)) throw std::invalid_argument("verify_pingpong: empty strip");
  if (!definitely_leq(right, left + S(2))) return false;  // wider than the translation length

  std::vector<Interval<S>> pieces;
  bool ok = true;
  for (const HalfSpacePair<S>& pair : cert.pairs) {
    for (const Interval<S>* iv : {&pair.minus, &pair.plus}) {
      if (!definitely_less(iv->lo, iv->hi)) throw std::invalid_argument("verify_pingpong: malformed interval");
      if (!definitely_less(iv->hi - iv->lo, S(2))) return false;
      detail::append_reduced_pieces(*iv, left, right, pieces, ok);
      if (!ok) return false;
    }
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval<S>& a, const Interval<S>& b) { return definitely_less(a.lo, b.lo); });
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    if (definitely_less(pieces[i].lo, pieces[i - 1].hi)) return false;  // interiors overlap
  }
  return true;
}

}  // namespace fourps
