#pragma once

// The decision procedure: a Set-up -> Arithmetic -> Decision -> End loop over
// canonical triples (x, y, z), with Ford-geometry criteria as transition
// predicates. Every verdict carries machine-checkable evidence that is
// re-verified against the original generators before it is returned.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fourps/canonical.hpp"
#include "fourps/ford.hpp"
#include "fourps/moebius.hpp"
#include "fourps/scalar.hpp"

namespace fourps {

template <class S>
struct AlgorithmConfig {
  S epsilon = scalar_from_rational<S>(Rational(1, 10), 0.0);
  S delta = scalar_from_rational<S>(Rational(1, 100), 0.0);
  long max_iterations = 10000;
};

using RConfig = AlgorithmConfig<Rational>;

// --- verdicts ----------------------------------------------------------------

template <class S>
struct FordDomain {
  std::vector<Geodesic<S>> geodesics;  // strip walls, (p,x), (x,q) and the B-side contact geodesic
  S p{};       // right contact point of the C half-space, x(2x-z)/(2x-y-z)
  S q{};       // image of p under C, computed by applying the matrix
  S mirror{};  // xy/(y+z), the reflection-symmetric contact value
  S b_edge{};  // left endpoint of the B plus-side half-space: -max(mirror, |B(q)|)
};

template <class S>
struct DiscreteVerdict {
  PingPongCertificate<S> certificate;
  FordDomain<S> domain;
};

template <class S>
struct EllipticWitnessVerdict {
  Word word;   // in the original generators; evaluates to |trace| < 2
  S trace{};
};

enum class DegenerateKind { TwoGenerator, Relation };

struct DegenerateVerdict {
  DegenerateKind kind;
  Word witness;  // evaluates to +-identity when nonempty
  std::string note;
};

enum class UndeterminedReason { BudgetExhausted, ToleranceBand };

struct UndeterminedVerdict {
  UndeterminedReason reason;
  long iterations = 0;
};

template <class S>
using Verdict = std::variant<DiscreteVerdict<S>, EllipticWitnessVerdict<S>, DegenerateVerdict, UndeterminedVerdict>;

enum class Phase { S, A, D, E };

// --- state -------------------------------------------------------------------

template <class S>
struct AlgorithmState {
  std::array<Mat2<S>, 3> originals;  // generators of the input triple
  std::array<Mat2<S>, 3> gens;       // current generators, always in canonical form
  std::array<Word, 3> words;         // current generator i = outer * eval(words[i], originals) * outer^-1
  Mat2<S> outer;                     // projective outer conjugator (reflections, role swaps)
  S x{}, y{}, z{};
  long iteration = 0;
  Phase phase = Phase::S;
};

struct HypothesesFail : std::runtime_error {
  explicit HypothesesFail(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline Word pow_word(const Word& w, std::int64_t n) {
  if (n == 0 || w.empty()) return {};
  if (w.size() == 1) return reduced({Letter{w[0].gen, w[0].exp * n}});
  const Word base = n < 0 ? inverse_word(w) : w;
  const std::int64_t count = n < 0 ? -n : n;
  if (count > 4096) throw HypothesesFail("word power too large to materialize");
  Word out;
  for (std::int64_t i = 0; i < count; ++i) out.insert(out.end(), base.begin(), base.end());
  return reduced(out);
}

// word in the current generators -> word in the originals
inline Word expand_word(const std::array<Word, 3>& words, const Word& w) {
  Word out;
  for (const Letter& l : w) {
    const Word part = pow_word(words[static_cast<int>(l.gen)], l.exp);
    out.insert(out.end(), part.begin(), part.end());
  }
  return reduced(out);
}

// M = +-[[1, tau],[0, 1]]; returns tau
template <class S>
S translation_amount(const Mat2<S>& m) {
  const Mat2<S> t = parabolic_rep(m);
  if (sign_of(t(1, 0)) != 0 || !definitely_equal(t(0, 0), S(1)) || !definitely_equal(t(1, 1), S(1)))
    throw std::logic_error("translation_amount: not a translation");
  return t(0, 1);
}

// smallest b >= 1 with 2a + tau*b = 0 for integer a; requires tau != 0
inline std::pair<std::int64_t, std::int64_t> commensurate_with_two(const Rational& tau) {
  using boost::multiprecision::gcd;
  const BigInt p = boost::multiprecision::numerator(tau);
  const BigInt q = boost::multiprecision::denominator(tau);
  const BigInt g = gcd(p, BigInt(2 * q));
  const BigInt b = 2 * q / g;
  const BigInt a = -p / g;
  if (b > 4096 || a > 4096 || a < -4096) throw HypothesesFail("commensurability exponents too large");
  return {a.convert_to<std::int64_t>(), b.convert_to<std::int64_t>()};
}

// ratio solver for two parabolics fixing the same boundary point, with
// lower-left entries beta, gamma: finds minimal (a, b), b >= 1, with
// a*beta + b*gamma = 0
inline std::pair<std::int64_t, std::int64_t> commensurate_parabolics(const Rational& beta, const Rational& gamma) {
  const Rational ratio = gamma / beta;
  const BigInt p = boost::multiprecision::numerator(ratio);
  const BigInt q = boost::multiprecision::denominator(ratio);
  if (q > 4096 || p > 4096 || p < -4096) throw HypothesesFail("commensurability exponents too large");
  return {(-p).convert_to<std::int64_t>(), q.convert_to<std::int64_t>()};
}

}  // namespace detail

// --- state maintenance --------------------------------------------------------

namespace detail {

template <class S>
void refresh_coords(AlgorithmState<S>& st) {
  const Mat2<S> b = parabolic_rep(st.gens[1]);
  const Mat2<S> cn = parabolic_rep(st.gens[2]);
  st.y = S(-2) / b(1, 0);
  st.z = S(-2) / cn(1, 0);
  st.x = (cn(0, 0) - cn(1, 1)) / (S(2) * cn(1, 0));
  if (!definitely_greater(st.x, S(0)) || !definitely_greater(st.y, S(0)) || !definitely_greater(st.z, S(0)))
    throw std::logic_error("state left the positive coordinate cone");
  if constexpr (scalar_is_exact<S>::value) {
    const auto rebuilt = matrices_from_triple(ParabolicTriple<S>(st.x, st.y, st.z));
    for (int i = 0; i < 3; ++i)
      if (!psl_equal(st.gens[i], rebuilt[i])) throw std::logic_error("state left canonical form");
  }
}

// restore canonical signs after an outer conjugation: the translation moves
// to the right, strengths have negative lower-left entries
template <class S>
void fix_signs(AlgorithmState<S>& st) {
  if (sign_of(parabolic_rep(st.gens[0])(0, 1)) < 0) {
    st.gens[0] = inverse_unimodular(st.gens[0]);
    st.words[0] = inverse_word(st.words[0]);
  }
  for (int i = 1; i < 3; ++i) {
    if (sign_of(parabolic_rep(st.gens[i])(1, 0)) > 0) {
      st.gens[i] = inverse_unimodular(st.gens[i]);
      st.words[i] = inverse_word(st.words[i]);
    }
  }
}

// C -> A^n C A^-n; the fixed point translates by 2n, the strength is unchanged
template <class S>
void translate_c(AlgorithmState<S>& st, std::int64_t n) {
  const Mat2<S> an = unimodular_pow(st.gens[0], n);
  st.gens[2] = conjugate(st.gens[2], an);
  st.words[2] = concat_words({pow_word(st.words[0], n), st.words[2], pow_word(st.words[0], -n)});
}

// reflect in the 0-infinity line (outer, orientation-reversing)
template <class S>
void reflect(AlgorithmState<S>& st) {
  const Mat2<S> r = mat2<S>(S(-1), S(0), S(0), S(1));
  for (Mat2<S>& m : st.gens) m = conjugate(m, r);
  st.outer = (r * st.outer).eval();
  fix_signs(st);
}

// C -> B C B^-1, reflecting afterwards if the fixed point went negative
template <class S>
void conjugate_c_by_b(AlgorithmState<S>& st) {
  st.gens[2] = conjugate(st.gens[2], st.gens[1]);
  st.words[2] = concat_words({st.words[1], st.words[2], inverse_word(st.words[1])});
  const Mat2<S> cn = parabolic_rep(st.gens[2]);
  const S fixed = (cn(0, 0) - cn(1, 1)) / (S(2) * cn(1, 0));
  if (sign_of(fixed) < 0) reflect(st);
  refresh_coords(st);
}

// exchange the roles of B and C by conjugating with w -> x - w (outer)
template <class S>
void swap_roles(AlgorithmState<S>& st) {
  const Mat2<S> sigma = mat2<S>(S(-1), st.x, S(0), S(1));
  for (Mat2<S>& m : st.gens) m = conjugate(m, sigma);
  st.outer = (sigma * st.outer).eval();
  std::swap(st.gens[1], st.gens[2]);
  std::swap(st.words[1], st.words[2]);
  fix_signs(st);
  refresh_coords(st);
}

template <class S>
void maintain_order(AlgorithmState<S>& st) {
  // role ordering is a stable tie-broken choice, not a verdict: an
  // indeterminate comparison keeps the current roles
  if (compare(st.z, st.y) == Ordering::Greater) swap_roles(st);
}

}  // namespace detail

template <class S>
AlgorithmState<S> make_state(const ParabolicTriple<S>& t) {
  AlgorithmState<S> st;
  st.originals = matrices_from_triple(t);
  st.gens = st.originals;
  st.words = {Word{{Gen::A, 1}}, Word{{Gen::B, 1}}, Word{{Gen::C, 1}}};
  st.outer = Mat2<S>::Identity();
  st.x = t.x;
  st.y = t.y;
  st.z = t.z;
  return st;
}

// audit-trail soundness: applying the recorded words to the original
// generators and conjugating by the outer map reproduces the current state
template <class S>
bool audit_consistent(const AlgorithmState<S>& st) {
  for (int i = 0; i < 3; ++i) {
    const Mat2<S> rebuilt = conjugate(evaluate_word(st.words[i], st.originals), st.outer);
    if (!psl_equal(rebuilt, st.gens[i])) return false;
  }
  return true;
}

// --- verdict construction (with re-verification) -------------------------------

namespace detail {

template <class S>
Verdict<S> elliptic_verdict(const AlgorithmState<S>& st, const Word& w_current) {
  const Word w = expand_word(st.words, w_current);
  const S tr = trace(evaluate_word(w, st.originals));
  if (!definitely_less(abs_val(tr), S(2))) throw std::logic_error("elliptic witness failed re-evaluation");
  return EllipticWitnessVerdict<S>{w, tr};
}

template <class S>
Verdict<S> degenerate_verdict(const AlgorithmState<S>& st, DegenerateKind kind, const Word& w_current,
                              std::string note) {
  const Word w = expand_word(st.words, w_current);
  if (!w.empty() && !is_psl_identity(evaluate_word(w, st.originals)))
    throw std::logic_error("relation witness failed re-evaluation");
  return DegenerateVerdict{kind, w, std::move(note)};
}

}  // namespace detail

// --- named decision predicates -------------------------------------------------

// outer Ford-distance of BC below 2: x^2/|2x - y - z| < 1 (strict)
template <class S>
bool bc_outer_below_two(const S& x, const S& y, const S& z) {
  return definitely_less(x * x, abs_val(S(2) * x - y - z));
}

// inner Ford-distance of BC within 2: (x^2 - yz)/|2x - y - z| <= 1 (inclusive;
// equality is the boundary-parabolic configuration)
template <class S>
bool bc_inner_within_two(const S& x, const S& y, const S& z) {
  return definitely_leq(x * x - y * z, abs_val(S(2) * x - y - z));
}

// --- certificate construction ---------------------------------------------------

// Builds a ping-pong certificate for the canonical triple. The primary
// construction is the contact chain of half-spaces [b_edge,0], [0,q], [q,x],
// [x,p] inside one strip of width 2; when that chain does not fit, the raw
// isometric-circle footprints are tried instead (they carry the cusped
// chains with tangencies). Every ordering and containment requirement is
// checked exactly; if both constructions fail, HypothesesFail is raised and
// the caller falls through to the end-step.
template <class S>
std::pair<PingPongCertificate<S>, FordDomain<S>> build_ford_certificate(const ParabolicTriple<S>& t) {
  const S x = t.x, y = t.y, z = t.z;
  const auto gens = matrices_from_triple(t);
  const S den = S(2) * x - y - z;

  // contact chain through the points p and C(p)
  if (sign_of(den) > 0) {
    try {
      const S p = x * (S(2) * x - z) / den;
      if (!definitely_greater(p, x)) throw HypothesesFail("p <= x");

      const BoundaryPoint<S> q_pt = mobius_apply(gens[2], BoundaryPoint<S>::finite(p));
      if (q_pt.infinite) throw HypothesesFail("C(p) at infinity");
      const S q = q_pt.v;
      if (!definitely_less(q, x) || sign_of(q) <= 0) throw HypothesesFail("C(p) outside (0, x)");
      if (!definitely_greater(q, y / S(2))) throw HypothesesFail("C(p) on the wrong side of B's circle");
      if (!definitely_less(q, x - z / S(2))) throw HypothesesFail("C(p) not left of C's circle center");

      const BoundaryPoint<S> bq_pt = mobius_apply(gens[1], BoundaryPoint<S>::finite(q));
      if (bq_pt.infinite || sign_of(bq_pt.v) >= 0) throw HypothesesFail("B(C(p)) not negative");
      const S mirror = x * y / (y + z);
      const S reach = abs_val(bq_pt.v);
      const S edge = definitely_geq(mirror, reach) ? mirror : reach;
      const S b_edge = -edge;
      if (!definitely_greater(-y / S(2), b_edge))
        throw HypothesesFail("B's circle center escapes its half-space");
      if (!definitely_leq(p, b_edge + S(2))) throw HypothesesFail("configuration wider than one strip");

      PingPongCertificate<S> cert;
      cert.strip_left = b_edge;
      cert.strip_right = b_edge + S(2);
      cert.pairs.push_back(HalfSpacePair<S>{Interval<S>{S(0), q}, Interval<S>{b_edge, S(0)}});  // B
      cert.pairs.push_back(HalfSpacePair<S>{Interval<S>{x, p}, Interval<S>{q, x}});             // C

      FordDomain<S> dom;
      dom.p = p;
      dom.q = q;
      dom.mirror = mirror;
      dom.b_edge = b_edge;
      dom.geodesics = {
          Geodesic<S>{BoundaryPoint<S>::finite(b_edge), BoundaryPoint<S>::infinity()},
          Geodesic<S>{BoundaryPoint<S>::finite(b_edge + S(2)), BoundaryPoint<S>::infinity()},
          Geodesic<S>{BoundaryPoint<S>::finite(p), BoundaryPoint<S>::finite(x)},
          Geodesic<S>{BoundaryPoint<S>::finite(x), BoundaryPoint<S>::finite(q)},
          Geodesic<S>{BoundaryPoint<S>::finite(-mirror), BoundaryPoint<S>::finite(S(0))},
      };

      if (!verify_pingpong(cert)) throw HypothesesFail("certificate failed verification");
      return {cert, dom};
    } catch (const HypothesesFail&) {
      // fall through to the isometric-circle candidate
    }
  }

  // isometric-circle footprints: B over [-y, 0], [0, y]; C over [x-z, x],
  // [x, x+z]; valid with tangencies when y <= x - z and x + y + z <= 2
  if (!definitely_leq(y, x - z)) throw HypothesesFail("isometric circles of B and C overlap");
  if (!definitely_leq(x + y + z, S(2))) throw HypothesesFail("isometric circles wider than one strip");

  PingPongCertificate<S> cert;
  cert.strip_left = x + z - S(2);
  cert.strip_right = x + z;
  cert.pairs.push_back(HalfSpacePair<S>{Interval<S>{S(0), y}, Interval<S>{-y, S(0)}});          // B
  cert.pairs.push_back(HalfSpacePair<S>{Interval<S>{x, x + z}, Interval<S>{x - z, x}});         // C

  FordDomain<S> dom;
  if (sign_of(den) > 0) {
    dom.p = x * (S(2) * x - z) / den;
    const BoundaryPoint<S> q_pt = mobius_apply(gens[2], BoundaryPoint<S>::finite(dom.p));
    dom.q = q_pt.infinite ? S(0) : q_pt.v;
  }
  dom.mirror = x * y / (y + z);
  dom.b_edge = -y;
  dom.geodesics = {
      Geodesic<S>{BoundaryPoint<S>::finite(x + z - S(2)), BoundaryPoint<S>::infinity()},
      Geodesic<S>{BoundaryPoint<S>::finite(x + z), BoundaryPoint<S>::infinity()},
      Geodesic<S>{BoundaryPoint<S>::finite(x), BoundaryPoint<S>::finite(x + z)},
      Geodesic<S>{BoundaryPoint<S>::finite(x - z), BoundaryPoint<S>::finite(x)},
      Geodesic<S>{BoundaryPoint<S>::finite(-y), BoundaryPoint<S>::finite(y)},
  };

  if (!verify_pingpong(cert)) throw HypothesesFail("certificate failed verification");
  return {cert, dom};
}

// --- algorithm steps --------------------------------------------------------------

// Set-up: pull the fixed point of C within 1+epsilon of the fixed point of B
// by a power of A, then prepare for minimization by conjugating C by B when x
// is small against y. Degenerate configurations surface here.
template <class S>
std::optional<Verdict<S>> step_S(AlgorithmState<S>& st, const AlgorithmConfig<S>& cfg) {
  st.phase = Phase::S;
  if (definitely_greater(st.x, S(1) + cfg.epsilon)) {
    if constexpr (!scalar_is_exact<S>::value) {
      const double k = std::floor(to_double(st.x) / 2.0);
      const double r = to_double(st.x) - 2.0 * k;
      if (std::abs(r) <= 1e-9 || std::abs(r - 2.0) <= 1e-9) throw ToleranceBand{};
      detail::translate_c(st, r <= 1.0 ? static_cast<std::int64_t>(-k) : static_cast<std::int64_t>(-k - 1));
      if (r > 1.0) detail::reflect(st);
      detail::refresh_coords(st);
    } else {
      const Rational xr = st.x;
      const BigInt k_big = boost::multiprecision::numerator(xr) / (2 * boost::multiprecision::denominator(xr));
      if (k_big > (BigInt(1) << 62)) return Verdict<S>{UndeterminedVerdict{UndeterminedReason::BudgetExhausted, st.iteration}};
      const auto k = k_big.convert_to<std::int64_t>();
      const S r = st.x - S(2) * scalar_from_rational<S>(Rational(k), 0.0);
      if (sign_of(r) == 0) {
        // the fixed point of C lands on an A-translate of the fixed point of
        // B: two parabolics share a fixed point, their strengths are
        // commensurable, and the group is generated by two elements
        detail::translate_c(st, -k);
        const Mat2<S> b = parabolic_rep(st.gens[1]);
        const Mat2<S> c = parabolic_rep(st.gens[2]);
        const auto [ea, eb] = detail::commensurate_parabolics(b(1, 0), c(1, 0));
        const Word w_cur = {{Gen::B, ea}, {Gen::C, eb}};
        return detail::degenerate_verdict(st, DegenerateKind::TwoGenerator, w_cur,
                                          "B and a translate of C share a fixed point");
      }
      if (definitely_leq(r, S(1))) {
        detail::translate_c(st, -k);
      } else {
        detail::translate_c(st, -k - 1);
        detail::reflect(st);
      }
      detail::refresh_coords(st);
    }
  }
  if (definitely_less(st.x, st.y - cfg.delta)) {
    if (definitely_equal(st.y, S(2) * st.x)) {
      // conjugating C by B sends its fixed point to infinity, so the
      // conjugate is a translation commensurable with A
      const Mat2<S> t = conjugate(st.gens[2], st.gens[1]);
      const S tau = detail::translation_amount(t);
      if constexpr (scalar_is_exact<S>::value) {
        const auto [a, b] = detail::commensurate_with_two(tau);
        const Word w_cur = {{Gen::A, a}, {Gen::B, 1}, {Gen::C, b}, {Gen::B, -1}};
        return detail::degenerate_verdict(st, DegenerateKind::TwoGenerator, w_cur,
                                          "conjugate of C by B is a translation commensurable with A");
      } else {
        throw ToleranceBand{};
      }
    }
    detail::conjugate_c_by_b(st);
  }
  return std::nullopt;
}

template <class S>
struct ProductTraces {
  Mat2<S> ab, ac, bc;
  S tr_ab{}, tr_ac{}, tr_bc{};
  IsometryClass cls_ab, cls_ac, cls_bc;
};

// Arithmetic: the pairwise products, by actual matrix multiplication.
template <class S>
ProductTraces<S> step_A(AlgorithmState<S>& st) {
  st.phase = Phase::A;
  ProductTraces<S> out;
  out.ab = (st.gens[0] * st.gens[1]).eval();
  out.ac = (st.gens[0] * st.gens[2]).eval();
  out.bc = (st.gens[1] * st.gens[2]).eval();
  out.tr_ab = trace(out.ab);
  out.tr_ac = trace(out.ac);
  out.tr_bc = trace(out.bc);
  out.cls_ab = classify(out.ab);
  out.cls_ac = classify(out.ac);
  out.cls_bc = classify(out.bc);
  if (out.cls_ab == IsometryClass::Indeterminate || out.cls_ac == IsometryClass::Indeterminate ||
      out.cls_bc == IsometryClass::Indeterminate)
    throw ToleranceBand{};
  return out;
}

namespace detail {

// A parabolic product whose fixed point meets the fixed point of B or C in
// the same translation orbit yields two parabolics sharing a fixed point;
// their strengths are commensurable over the rationals and a relation
// follows. The end-step case analysis would otherwise stall here.
template <class S>
std::optional<Verdict<S>> parabolic_collision(const AlgorithmState<S>& st, const ProductTraces<S>& pt) {
  if constexpr (!scalar_is_exact<S>::value) {
    return std::nullopt;  // equality of fixed points is not decidable approximately
  } else {
    struct Candidate {
      const Mat2<S>* m;
      Word word;
    };
    const Candidate products[] = {
        {&pt.ab, {{Gen::A, 1}, {Gen::B, 1}}},
        {&pt.ac, {{Gen::A, 1}, {Gen::C, 1}}},
        {&pt.bc, {{Gen::B, 1}, {Gen::C, 1}}},
    };
    const Candidate targets[] = {
        {&st.gens[1], {{Gen::B, 1}}},
        {&st.gens[2], {{Gen::C, 1}}},
    };
    for (const auto& prod : products) {
      if (classify(*prod.m) != IsometryClass::Parabolic) continue;
      const Mat2<S> p = parabolic_rep(*prod.m);
      if (sign_of(p(1, 0)) == 0) continue;  // fixes infinity; handled elsewhere
      const S fix_p = (p(0, 0) - p(1, 1)) / (S(2) * p(1, 0));
      for (const auto& tgt : targets) {
        const Mat2<S> q = parabolic_rep(*tgt.m);
        const S fix_q = (q(0, 0) - q(1, 1)) / (S(2) * q(1, 0));
        const Rational shift = Rational(fix_p - fix_q) / 2;
        if (boost::multiprecision::denominator(shift) != 1) continue;
        const BigInt k_big = boost::multiprecision::numerator(shift);
        if (k_big > 4096 || k_big < -4096) continue;
        const auto k = k_big.convert_to<std::int64_t>();
        // A^-k P A^k and the target both fix fix_q; strengths are c(P), c(Q)
        const auto [a, b] = commensurate_parabolics(p(1, 0), q(1, 0));
        Word w_cur = concat_words({Word{{Gen::A, -k}}, pow_word(prod.word, a), Word{{Gen::A, k}},
                                   pow_word(tgt.word, b)});
        return degenerate_verdict(st, DegenerateKind::Relation, w_cur,
                                  "a parabolic product shares a fixed point with a generator");
      }
    }
    return std::nullopt;
  }
}

}  // namespace detail

// Decision: elliptic products, the power trick, or a Ford domain.
template <class S>
std::optional<Verdict<S>> step_D(AlgorithmState<S>& st, const ProductTraces<S>& pt, const AlgorithmConfig<S>& cfg) {
  st.phase = Phase::D;
  // products of generators that are already elliptic end the run
  if (pt.cls_ab == IsometryClass::Elliptic) return detail::elliptic_verdict(st, {{Gen::A, 1}, {Gen::B, 1}});
  if (pt.cls_ac == IsometryClass::Elliptic) return detail::elliptic_verdict(st, {{Gen::A, 1}, {Gen::C, 1}});
  // D1
  if (pt.cls_bc == IsometryClass::Elliptic) return detail::elliptic_verdict(st, {{Gen::B, 1}, {Gen::C, 1}});
  // parabolic products colliding with a generator cusp force a relation
  if (auto v = detail::parabolic_collision(st, pt)) return *v;

  const S gap = abs_val(S(2) * st.x - st.y - st.z);
  // D2: the Ford strength of BC exceeds 1, so some A^n BC is elliptic --
  // unless BC fixes infinity, in which case it is a translation
  // commensurable with A and a relation follows
  if (definitely_less(gap, st.y * st.z)) {
    const S c_bc = pt.bc(1, 0);
    if (sign_of(c_bc) == 0) {
      if constexpr (scalar_is_exact<S>::value) {
        // BC fixes infinity together with A
        if (pt.cls_bc == IsometryClass::Hyperbolic) {
          // a hyperbolic and a parabolic sharing a fixed point generate an
          // elementary non-discrete subgroup
          return DegenerateVerdict{DegenerateKind::TwoGenerator,
                                   {},
                                   "BC is hyperbolic and fixes infinity with A: <A,BC> is elementary "
                                   "and not discrete"};
        }
        const S tau = detail::translation_amount(pt.bc);
        const auto [a, b] = detail::commensurate_with_two(tau);
        Word w_cur = {{Gen::A, a}};
        for (std::int64_t i = 0; i < b; ++i) {
          w_cur.push_back({Gen::B, 1});
          w_cur.push_back({Gen::C, 1});
        }
        return detail::degenerate_verdict(st, DegenerateKind::Relation, w_cur,
                                          "BC is a translation commensurable with A");
      } else {
        throw ToleranceBand{};
      }
    }
    const auto n = elliptic_power_exists(pt.bc);
    if (!n) throw std::logic_error("Ford strength above 1 but no elliptic power found");
    return detail::elliptic_verdict(st, {{Gen::A, *n}, {Gen::B, 1}, {Gen::C, 1}});
  }

  // D3: minimal position plus inner Ford-distance of BC within 2
  if (definitely_leq(st.y, st.x) && definitely_leq(st.x, S(1) + cfg.epsilon) &&
      bc_inner_within_two(st.x, st.y, st.z)) {
    const Mat2<S> abc = (st.gens[0] * pt.bc).eval();
    const IsometryClass cls_abc = classify(abc);
    if (cls_abc == IsometryClass::Indeterminate) throw ToleranceBand{};
    if (cls_abc == IsometryClass::Elliptic)
      return detail::elliptic_verdict(st, {{Gen::A, 1}, {Gen::B, 1}, {Gen::C, 1}});
    try {
      auto [cert, dom] = build_ford_certificate(ParabolicTriple<S>(st.x, st.y, st.z));
      if (!verify_pingpong(cert)) throw std::logic_error("discrete verdict failed certificate re-verification");
      return Verdict<S>{DiscreteVerdict<S>{std::move(cert), std::move(dom)}};
    } catch (const HypothesesFail&) {
      // fall through to the end-step
    }
  }
  return std::nullopt;
}

enum class ERoute { D3Satisfied, D2Satisfied, ConjugateCByB, SwapAndRetry, Stalled };

// End: route by the boundary configuration of (x, y, z), assuming y >= z.
template <class S>
ERoute classify_e_route(const AlgorithmState<S>& st, const AlgorithmConfig<S>& cfg) {
  const S &x = st.x, &y = st.y, &z = st.z;
  const S gap = S(2) * x - y - z;
  // E1
  if (definitely_less(z, y) && definitely_less(y, x) && definitely_less(x, S(1))) return ERoute::D3Satisfied;
  // E2: the chain needs x > z and x < y; guard the divisions
  if (definitely_greater(x, S(1)) && definitely_less(x, S(1) + cfg.epsilon) && sign_of(gap) > 0 &&
      definitely_greater(x, z)) {
    const S lhs = (x * x - y * z) / gap;
    const S mid = (x * y - y * z) / (x - z);
    if (definitely_less(lhs, mid) && definitely_less(mid, S(1))) return ERoute::D2Satisfied;
  }
  // E3 / E4
  if (definitely_less(gap, y * z)) return ERoute::D2Satisfied;
  if (definitely_greater(gap, y * z) && definitely_leq(x, S(1) + cfg.epsilon) && definitely_leq(y, x))
    return ERoute::D3Satisfied;
  // E5
  if (definitely_greater(y, x) && definitely_geq(x, y - cfg.delta)) return ERoute::ConjugateCByB;
  // E6
  if (definitely_less(x, z - cfg.delta)) return ERoute::SwapAndRetry;
  return ERoute::Stalled;
}

template <class S>
std::optional<Verdict<S>> step_E(AlgorithmState<S>& st, const AlgorithmConfig<S>& cfg, bool& moved) {
  st.phase = Phase::E;
  moved = false;
  switch (classify_e_route(st, cfg)) {
    case ERoute::ConjugateCByB:
      if (definitely_equal(st.y, S(2) * st.x)) {
        if constexpr (scalar_is_exact<S>::value) {
          const Mat2<S> t = conjugate(st.gens[2], st.gens[1]);
          const auto [a, b] = detail::commensurate_with_two(detail::translation_amount(t));
          const Word w_cur = {{Gen::A, a}, {Gen::B, 1}, {Gen::C, b}, {Gen::B, -1}};
          return detail::degenerate_verdict(st, DegenerateKind::TwoGenerator, w_cur,
                                            "conjugate of C by B is a translation commensurable with A");
        }
        throw ToleranceBand{};
      }
      detail::conjugate_c_by_b(st);
      moved = true;
      return std::nullopt;
    case ERoute::SwapAndRetry:
      detail::swap_roles(st);
      moved = true;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

// --- the decision procedure -----------------------------------------------------

template <class S>
struct Decision {
  Verdict<S> verdict;
  long iterations = 0;
};

template <class S>
Decision<S> decide_full(const ParabolicTriple<S>& t, const AlgorithmConfig<S>& cfg = AlgorithmConfig<S>{}) {
  if (!definitely_greater(cfg.epsilon, S(0)) || !definitely_greater(cfg.delta, S(0)) || cfg.max_iterations < 0)
    throw std::invalid_argument("invalid algorithm configuration");
  AlgorithmState<S> st = make_state(t);
  try {
    for (st.iteration = 1; st.iteration <= cfg.max_iterations; ++st.iteration) {
      if (bit_size(st.x) + bit_size(st.y) + bit_size(st.z) > 65536)
        return {UndeterminedVerdict{UndeterminedReason::BudgetExhausted, st.iteration}, st.iteration};
      const std::array<S, 3> before{st.x, st.y, st.z};
      if (auto v = step_S(st, cfg)) return {*v, st.iteration};
      // decisions and end-step routing assume y >= z; the set-up step works
      // on the roles as given
      detail::maintain_order(st);
      const ProductTraces<S> pt = step_A(st);
      if (auto v = step_D(st, pt, cfg)) return {*v, st.iteration};
      bool moved = false;
      if (auto v = step_E(st, cfg, moved)) return {*v, st.iteration};
      if (!moved && definitely_equal(before[0], st.x) && definitely_equal(before[1], st.y) &&
          definitely_equal(before[2], st.z)) {
        // no applicable move: the case analysis has nothing left
        return {UndeterminedVerdict{UndeterminedReason::BudgetExhausted, st.iteration}, st.iteration};
      }
    }
    return {UndeterminedVerdict{UndeterminedReason::BudgetExhausted, cfg.max_iterations}, cfg.max_iterations};
  } catch (const ToleranceBand&) {
    return {UndeterminedVerdict{UndeterminedReason::ToleranceBand, st.iteration}, st.iteration};
  } catch (const HypothesesFail&) {
    return {UndeterminedVerdict{UndeterminedReason::BudgetExhausted, st.iteration}, st.iteration};
  }
}

template <class S>
Verdict<S> decide(const ParabolicTriple<S>& t, const AlgorithmConfig<S>& cfg = AlgorithmConfig<S>{}) {
  return decide_full(t, cfg).verdict;
}

}  // namespace fourps
