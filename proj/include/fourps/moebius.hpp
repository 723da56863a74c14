#pragma once

// 2x2 matrix algebra for PSL(2,R): trace classification, fixed points,
// conjugation, Nielsen moves and word evaluation. Matrices are Eigen
// fixed-size types templated on the scalar backend.

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fourps/scalar.hpp"

namespace Eigen {
template <>
struct NumTraits<fourps::Approx> {
  using Real = fourps::Approx;
  using NonInteger = fourps::Approx;
  using Literal = fourps::Approx;
  using Nested = fourps::Approx;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 1,
    MulCost = 1
  };
  static inline Real epsilon() { return fourps::Approx(std::numeric_limits<double>::epsilon()); }
  static inline Real dummy_precision() { return fourps::Approx(1e-12); }
  static inline Real highest() { return fourps::Approx(std::numeric_limits<double>::max()); }
  static inline Real lowest() { return fourps::Approx(std::numeric_limits<double>::lowest()); }
  static inline int digits10() { return 15; }
};
}  // namespace Eigen

namespace fourps {

template <class S>
using Mat2 = Eigen::Matrix<S, 2, 2>;

using RMat2 = Mat2<Rational>;
using AMat2 = Mat2<Approx>;

template <class S>
Mat2<S> mat2(const S& a, const S& b, const S& c, const S& d) {
  Mat2<S> m;
  m << a, b, c, d;
  return m;
}

inline RMat2 rmat2(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  return mat2<Rational>(a, b, c, d);
}

template <class S>
S trace(const Mat2<S>& m) {
  return m(0, 0) + m(1, 1);
}

template <class S>
S determinant(const Mat2<S>& m) {
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

// det == 1, up to the backend's band.
template <class S>
bool is_unimodular(const Mat2<S>& m) {
  const Ordering ord = compare(determinant(m), S(1));
  return ord == Ordering::Equal || ord == Ordering::Indeterminate;
}

// Inverse of a det-1 matrix (the adjugate).
template <class S>
Mat2<S> inverse_unimodular(const Mat2<S>& m) {
  return mat2<S>(m(1, 1), -m(0, 1), -m(1, 0), m(0, 0));
}

template <class S>
Mat2<S> adjugate(const Mat2<S>& m) {
  return inverse_unimodular(m);
}

template <class S>
bool entries_equal(const Mat2<S>& a, const Mat2<S>& b) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!definitely_equal(a(i, j), b(i, j))) return false;
  return true;
}

// Canonical PSL representative: first nonzero entry in reading order is
// positive.
template <class S>
Mat2<S> psl_normalized(const Mat2<S>& m) {
  for (const S* e : {&m(0, 0), &m(0, 1), &m(1, 0), &m(1, 1)}) {
    const int s = sign_of(*e);
    if (s > 0) return m;
    if (s < 0) return Mat2<S>(-m);
  }
  return m;
}

template <class S>
bool psl_equal(const Mat2<S>& a, const Mat2<S>& b) {
  return entries_equal(psl_normalized(a), psl_normalized(b));
}

template <class S>
bool is_psl_identity(const Mat2<S>& m) {
  return psl_equal(m, Mat2<S>(Mat2<S>::Identity()));
}

// The representative with non-negative trace; for parabolics this pins the
// sign of every entry.
template <class S>
Mat2<S> parabolic_rep(const Mat2<S>& m) {
  return sign_of(trace(m)) < 0 ? Mat2<S>(-m) : m;
}

// X need not be unimodular: conjugation by any invertible matrix, with the
// determinant divided back out so det-1 inputs stay det-1.
template <class S>
Mat2<S> conjugate(const Mat2<S>& m, const Mat2<S>& x) {
  const S det = determinant(x);
  if (compare(det, S(0)) == Ordering::Equal) throw std::domain_error("conjugator is singular");
  Mat2<S> r = (x * m * adjugate(x)).eval();
  r(0, 0) = r(0, 0) / det;
  r(0, 1) = r(0, 1) / det;
  r(1, 0) = r(1, 0) / det;
  r(1, 1) = r(1, 1) / det;
  return r;
}

enum class IsometryClass { Identity, Elliptic, Parabolic, Hyperbolic, Indeterminate };

inline const char* to_string(IsometryClass c) {
  switch (c) {
    case IsometryClass::Identity: return "identity";
    case IsometryClass::Elliptic: return "elliptic";
    case IsometryClass::Parabolic: return "parabolic";
    case IsometryClass::Hyperbolic: return "hyperbolic";
    default: return "indeterminate";
  }
}

// Trace test: elliptic |tr| < 2, parabolic |tr| = 2, hyperbolic |tr| > 2;
// +-I is split off as Identity. The approximate backend answers
// Indeterminate when |tr| sits inside the tolerance band around 2.
template <class S>
IsometryClass classify(const Mat2<S>& m) {
  const Ordering ord = compare(abs_val(trace(m)), S(2));
  if (ord == Ordering::Indeterminate) return IsometryClass::Indeterminate;
  if (ord == Ordering::Less) return IsometryClass::Elliptic;
  if (ord == Ordering::Greater) return IsometryClass::Hyperbolic;
  if (compare(m(0, 1), S(0)) == Ordering::Equal && compare(m(1, 0), S(0)) == Ordering::Equal)
    return IsometryClass::Identity;
  return IsometryClass::Parabolic;
}

template <class S>
struct BoundaryPoint {
  bool infinite = false;
  S v{};

  static BoundaryPoint infinity() { return {true, S{}}; }
  static BoundaryPoint finite(const S& value) { return {false, value}; }
};

template <class S>
bool boundary_equal(const BoundaryPoint<S>& a, const BoundaryPoint<S>& b) {
  if (a.infinite || b.infinite) return a.infinite && b.infinite;
  return definitely_equal(a.v, b.v);
}

// Action of a matrix on the boundary circle R u {oo}.
template <class S>
BoundaryPoint<S> mobius_apply(const Mat2<S>& m, const BoundaryPoint<S>& p) {
  if (p.infinite) {
    if (compare(m(1, 0), S(0)) == Ordering::Equal) return BoundaryPoint<S>::infinity();
    return BoundaryPoint<S>::finite(m(0, 0) / m(1, 0));
  }
  const S den = m(1, 0) * p.v + m(1, 1);
  if (compare(den, S(0)) == Ordering::Equal) return BoundaryPoint<S>::infinity();
  return BoundaryPoint<S>::finite((m(0, 0) * p.v + m(0, 1)) / den);
}

// Fixed-point data. Hyperbolic endpoints of an exact matrix are u +- v*sqrt(disc)
// and stay in surd form when disc is not a perfect square; parabolic and
// elliptic fixed points of rational matrices are always rational.
template <class S>
struct FixedPointSet {
  IsometryClass cls = IsometryClass::Indeterminate;
  std::optional<BoundaryPoint<S>> single;            // parabolic
  std::vector<BoundaryPoint<S>> pair;                // hyperbolic, when expressible in S
  std::optional<std::array<S, 3>> surd;              // hyperbolic (u, v, disc), endpoints u +- v*sqrt(disc)
  std::optional<std::pair<S, S>> interior;           // elliptic (re, im^2)
};

namespace detail {
inline bool sqrt_in_scalar(const Rational& q, Rational& out) { return rational_sqrt(q, out); }
inline bool sqrt_in_scalar(const Approx& q, Approx& out) {
  if (q.value < 0) return false;
  out = Approx{std::sqrt(q.value), q.tol};
  return true;
}
}  // namespace detail

template <class S>
FixedPointSet<S> fixed_points(const Mat2<S>& m) {
  FixedPointSet<S> out;
  out.cls = classify(m);
  if (out.cls == IsometryClass::Identity) throw std::domain_error("fixed_points: identity fixes everything");
  const S a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  const bool c_zero = compare(c, S(0)) == Ordering::Equal;
  switch (out.cls) {
    case IsometryClass::Parabolic:
      out.single = c_zero ? BoundaryPoint<S>::infinity()
                          : BoundaryPoint<S>::finite((a - d) / (S(2) * c));
      break;
    case IsometryClass::Hyperbolic: {
      if (c_zero) {
        out.pair.push_back(BoundaryPoint<S>::infinity());
        out.pair.push_back(BoundaryPoint<S>::finite(b / (d - a)));
        break;
      }
      const S tr = trace(m);
      const S disc = tr * tr - S(4);
      const S u = (a - d) / (S(2) * c);
      S root{};
      if (detail::sqrt_in_scalar(disc, root)) {
        const S w = abs_val(root / (S(2) * c));
        out.pair.push_back(BoundaryPoint<S>::finite(u - w));
        out.pair.push_back(BoundaryPoint<S>::finite(u + w));
      } else {
        out.surd = std::array<S, 3>{u, abs_val(S(1) / (S(2) * c)), disc};
      }
      break;
    }
    case IsometryClass::Elliptic: {
      // elliptic implies c != 0
      const S tr = trace(m);
      out.interior = std::make_pair((a - d) / (S(2) * c),
                                    (S(4) - tr * tr) / (S(4) * c * c));
      break;
    }
    default:
      throw ToleranceBand{};
  }
  return out;
}

// --- words over the ordered generating triple ------------------------------

enum class Gen : int { A = 0, B = 1, C = 2 };

struct Letter {
  Gen gen;
  std::int64_t exp;
};

using Word = std::vector<Letter>;

inline Word reduced(const Word& w) {
  Word out;
  for (const Letter& l : w) {
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().gen == l.gen) {
      out.back().exp += l.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

inline Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
  return out;
}

inline Word concat_words(std::initializer_list<Word> parts) {
  Word out;
  for (const Word& p : parts) out.insert(out.end(), p.begin(), p.end());
  return reduced(out);
}

inline std::size_t word_length(const Word& w) {
  std::size_t n = 0;
  for (const Letter& l : w) n += static_cast<std::size_t>(l.exp < 0 ? -l.exp : l.exp);
  return n;
}

template <class S>
Mat2<S> unimodular_pow(Mat2<S> base, std::int64_t e) {
  if (e < 0) {
    base = inverse_unimodular(base);
    e = -e;
  }
  Mat2<S> r = Mat2<S>::Identity();
  while (e > 0) {
    if (e & 1) r = (r * base).eval();
    base = (base * base).eval();
    e >>= 1;
  }
  return r;
}

// pre: w freely reduced (not enforced; reduce first if unsure)
template <class S>
Mat2<S> evaluate_word(const Word& w, const std::array<Mat2<S>, 3>& gens) {
  Mat2<S> r = Mat2<S>::Identity();
  for (const Letter& l : w) r = (r * unimodular_pow(gens[static_cast<int>(l.gen)], l.exp)).eval();
  return r;
}

// --- Nielsen moves ----------------------------------------------------------

struct NielsenMove {
  enum class Kind { Switch, Invert, Twist } kind;
  int i = 0;  // 0-based generator indices
  int j = 0;
};

template <class S>
std::array<Mat2<S>, 3> nielsen_move(std::array<Mat2<S>, 3> g, const NielsenMove& mv) {
  switch (mv.kind) {
    case NielsenMove::Kind::Switch:
      if (mv.i == mv.j) throw std::invalid_argument("switch needs distinct indices");
      std::swap(g[mv.i], g[mv.j]);
      break;
    case NielsenMove::Kind::Invert:
      g[mv.i] = inverse_unimodular(g[mv.i]);
      break;
    case NielsenMove::Kind::Twist:
      if (mv.i == mv.j) throw std::invalid_argument("twist needs distinct indices");
      g[mv.j] = (g[mv.i] * g[mv.j]).eval();
      break;
  }
  return g;
}

// |Tr(M1*M2)| < |Tr(M1^-1*M2)|, the orientation under which trace
// minimization makes progress. Strict: the equality case is false.
template <class S>
bool coherently_oriented(const Mat2<S>& m1, const Mat2<S>& m2) {
  const S direct = abs_val(trace((m1 * m2).eval()));
  const S flipped = abs_val(trace((inverse_unimodular(m1) * m2).eval()));
  return definitely_less(direct, flipped);
}

}  // namespace fourps
