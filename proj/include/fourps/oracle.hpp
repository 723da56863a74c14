#pragma once

// Brute-force verification, exact backend only: exhaustive enumeration of
// freely reduced words with elliptic/relation detection, pairwise Jorgensen
// scanning, and cross-validation of verdicts. Words are evaluated over
// denominator-cleared integer matrices; a 128-bit fast path is selected when
// an a-priori entry bound allows it.

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fourps/algorithm.hpp"
#include "fourps/canonical.hpp"
#include "fourps/moebius.hpp"
#include "fourps/scalar.hpp"

namespace fourps {

struct CapExceeded : std::invalid_argument {
  explicit CapExceeded(const std::string& what) : std::invalid_argument(what) {}
};

inline constexpr int kEnumerationCap = 12;
inline constexpr int kJorgensenCap = 6;

struct FoundWord {
  Word word;
  Rational trace;
};

struct SearchReport {
  int max_length = 0;
  std::vector<std::size_t> counts;  // freely reduced words of length 1..max_length
  std::size_t elliptic_count = 0;
  std::size_t relation_count = 0;
  std::vector<FoundWord> elliptics;  // sample, capped
  std::vector<Word> relations;       // sample, capped
  std::size_t pairs_checked = 0;
  std::size_t violation_count = 0;
  std::vector<std::pair<Word, Word>> violations;  // sample, capped

  static constexpr std::size_t sample_cap = 256;

  bool clean() const { return elliptic_count == 0 && relation_count == 0; }
};

namespace oracle_detail {

template <class T>
struct M22 {
  T a{}, b{}, c{}, d{};
};

template <class T>
inline M22<T> mul(const M22<T>& l, const M22<T>& r) {
  return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
          l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
}

template <class T>
inline T abs_int(const T& v) {
  return v < 0 ? T(-v) : v;
}

// denominator-cleared generator system: gen i is fwd[i]/scale[i] with
// det(fwd[i]) = scale[i]^2, letters 0..2 forward, 3..5 inverses
struct ScaledSystem {
  std::array<M22<BigInt>, 6> letter;
  std::array<BigInt, 3> scale;
  BigInt max_entry = 0;
  BigInt max_scale = 1;
};

inline ScaledSystem build_scaled(const std::array<RMat2, 3>& gens) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::lcm;
  using boost::multiprecision::numerator;
  ScaledSystem sys;
  for (int i = 0; i < 3; ++i) {
    BigInt den = 1;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) den = lcm(den, denominator(gens[i](r, c)));
    auto scaled_entry = [&](int r, int c) {
      const Rational v = gens[i](r, c) * Rational(den);
      return numerator(v);
    };
    M22<BigInt> f{scaled_entry(0, 0), scaled_entry(0, 1), scaled_entry(1, 0), scaled_entry(1, 1)};
    if (f.a * f.d - f.b * f.c != den * den) throw std::invalid_argument("oracle: generator determinant is not 1");
    sys.letter[i] = f;
    sys.letter[i + 3] = M22<BigInt>{f.d, -f.b, -f.c, f.a};
    sys.scale[i] = den;
    sys.max_scale = std::max(sys.max_scale, den);
    for (const BigInt* e : {&f.a, &f.b, &f.c, &f.d}) sys.max_entry = std::max(sys.max_entry, abs_int(*e));
  }
  if (sys.max_entry == 0) sys.max_entry = 1;
  return sys;
}

inline std::size_t bit_length(const BigInt& v) {
  if (v == 0) return 1;
  return static_cast<std::size_t>(boost::multiprecision::msb(abs_int(v))) + 1;
}

inline Word word_from_letters(const std::vector<int>& letters, int depth) {
  Word w;
  for (int i = 0; i < depth; ++i) {
    const int l = letters[i];
    w.push_back({static_cast<Gen>(l % 3), l < 3 ? 1 : -1});
  }
  return reduced(w);
}

template <class T>
T from_bigint(const BigInt& v);
template <>
inline BigInt from_bigint<BigInt>(const BigInt& v) { return v; }
#ifdef __SIZEOF_INT128__
template <>
inline __int128 from_bigint<__int128>(const BigInt& v) {
  const bool neg = v < 0;
  BigInt u = abs_int(v);
  unsigned __int128 out = 0;
  for (int shift = 0; u != 0; shift += 32) {
    out |= static_cast<unsigned __int128>((u & 0xffffffff).convert_to<std::uint32_t>()) << shift;
    u >>= 32;
  }
  return neg ? -static_cast<__int128>(out) : static_cast<__int128>(out);
}
#endif

inline BigInt to_bigint(const BigInt& v) { return v; }
#ifdef __SIZEOF_INT128__
inline BigInt to_bigint(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  BigInt out = 0;
  int shift = 0;
  while (u != 0) {
    out += BigInt(static_cast<std::uint64_t>(u & 0xffffffffffffffffULL)) << shift;
    u >>= 64;
    shift += 64;
  }
  return neg ? BigInt(-out) : out;
}
#endif

// on_hit(word_letters, depth, scaled trace, denominator, is_relation);
// returns false to abort the walk
template <class T, class OnHit>
bool walk(const ScaledSystem& sys, int max_length, std::vector<std::size_t>* counts, OnHit&& on_hit) {
  std::array<M22<T>, 6> letter;
  std::array<T, 3> scale;
  for (int i = 0; i < 6; ++i)
    letter[i] = {from_bigint<T>(sys.letter[i].a), from_bigint<T>(sys.letter[i].b),
                 from_bigint<T>(sys.letter[i].c), from_bigint<T>(sys.letter[i].d)};
  for (int i = 0; i < 3; ++i) scale[i] = from_bigint<T>(sys.scale[i]);

  std::vector<M22<T>> mats(static_cast<std::size_t>(max_length) + 1);
  std::vector<T> dens(static_cast<std::size_t>(max_length) + 1);
  std::vector<int> letters(static_cast<std::size_t>(max_length) + 1, 0);
  mats[0] = {T(1), T(0), T(0), T(1)};
  dens[0] = T(1);

  // iterative DFS over the freely reduced word tree
  std::function<bool(int)> rec = [&](int depth) -> bool {
    const int banned = depth == 0 ? -1 : (letters[depth - 1] + 3) % 6;
    for (int l = 0; l < 6; ++l) {
      if (l == banned) continue;
      letters[depth] = l;
      mats[depth + 1] = mul(mats[depth], letter[l]);
      dens[depth + 1] = dens[depth] * scale[l % 3];
      if (counts) (*counts)[depth] += 1;
      const M22<T>& m = mats[depth + 1];
      const T tr = m.a + m.d;
      const T bound = T(2) * dens[depth + 1];
      if (abs_int(tr) < bound) {
        if (!on_hit(letters, depth + 1, to_bigint(tr), to_bigint(dens[depth + 1]), false)) return false;
      } else if (m.b == 0 && m.c == 0 && m.a == m.d) {
        if (!on_hit(letters, depth + 1, to_bigint(tr), to_bigint(dens[depth + 1]), true)) return false;
      }
      if (depth + 1 < max_length) {
        if (!rec(depth + 1)) return false;
      }
    }
    return true;
  };
  return rec(0);
}

// true when the 128-bit fast path provably cannot overflow at this depth
inline bool int128_safe(const ScaledSystem& sys, int max_length) {
#ifdef __SIZEOF_INT128__
  const std::size_t b0 = bit_length(sys.max_entry) + 1;
  const std::size_t bs = bit_length(sys.max_scale);
  const std::size_t need = std::max(static_cast<std::size_t>(max_length) * b0 + 2,
                                    static_cast<std::size_t>(max_length) * bs + 3);
  return need <= 120;
#else
  return false;
#endif
}

template <class OnHit>
bool run_walk(const ScaledSystem& sys, int max_length, std::vector<std::size_t>* counts, OnHit&& on_hit) {
#ifdef __SIZEOF_INT128__
  if (int128_safe(sys, max_length))
    return walk<__int128>(sys, max_length, counts, std::forward<OnHit>(on_hit));
#endif
  return walk<BigInt>(sys, max_length, counts, std::forward<OnHit>(on_hit));
}

}  // namespace oracle_detail

// Exhaustively evaluates all freely reduced words up to max_length (there are
// 6 * 5^(L-1) of length L) and records every elliptic and every relation.
inline SearchReport enumerate_words(const std::array<RMat2, 3>& gens, int max_length) {
  if (max_length < 1 || max_length > kEnumerationCap)
    throw CapExceeded("enumerate_words: length must be in [1, 12]");
  const auto sys = oracle_detail::build_scaled(gens);
  SearchReport report;
  report.max_length = max_length;
  report.counts.assign(static_cast<std::size_t>(max_length), 0);
  oracle_detail::run_walk(sys, max_length, &report.counts,
                          [&](const std::vector<int>& letters, int depth, const BigInt& tr, const BigInt& den,
                              bool is_relation) {
                            if (is_relation) {
                              report.relation_count += 1;
                              if (report.relations.size() < SearchReport::sample_cap)
                                report.relations.push_back(oracle_detail::word_from_letters(letters, depth));
                            } else {
                              report.elliptic_count += 1;
                              if (report.elliptics.size() < SearchReport::sample_cap)
                                report.elliptics.push_back(
                                    {oracle_detail::word_from_letters(letters, depth), Rational(tr, den)});
                            }
                            return true;
                          });
  return report;
}

// Early-exit sweep: true iff no elliptic and no relation exists at or below
// the given length.
inline bool clean_to_length(const std::array<RMat2, 3>& gens, int max_length) {
  if (max_length < 1 || max_length > kEnumerationCap)
    throw CapExceeded("clean_to_length: length must be in [1, 12]");
  const auto sys = oracle_detail::build_scaled(gens);
  return oracle_detail::run_walk(sys, max_length, nullptr,
                                 [&](const std::vector<int>&, int, const BigInt&, const BigInt&, bool) {
                                   return false;  // abort on the first hit
                                 });
}

// Necessary-condition sweep: reports ordered pairs of distinct non-elementary
// words violating Jorgensen's inequality. Quadratic in the word count, so the
// cap is small.
inline SearchReport jorgensen_scan(const std::array<RMat2, 3>& gens, int max_length) {
  if (max_length < 1 || max_length > kJorgensenCap)
    throw CapExceeded("jorgensen_scan: length must be in [1, 6]");
  const auto sys = oracle_detail::build_scaled(gens);
  SearchReport report;
  report.max_length = max_length;
  report.counts.assign(static_cast<std::size_t>(max_length), 0);

  struct Entry {
    oracle_detail::M22<BigInt> m;
    BigInt den;
    Word word;
  };
  std::vector<Entry> entries;
  {
    std::vector<int> letters;
    std::function<void(int, const oracle_detail::M22<BigInt>&, const BigInt&)> rec =
        [&](int depth, const oracle_detail::M22<BigInt>& m, const BigInt& den) {
          const int banned = depth == 0 ? -1 : (letters.back() + 3) % 6;
          for (int l = 0; l < 6; ++l) {
            if (l == banned) continue;
            const auto nm = oracle_detail::mul(m, sys.letter[l]);
            const BigInt nden = den * sys.scale[l % 3];
            letters.push_back(l);
            report.counts[static_cast<std::size_t>(depth)] += 1;
            entries.push_back({nm, nden, oracle_detail::word_from_letters(letters, depth + 1)});
            if (depth + 1 < max_length) rec(depth + 1, nm, nden);
            letters.pop_back();
          }
        };
    rec(0, {BigInt(1), BigInt(0), BigInt(0), BigInt(1)}, BigInt(1));
  }

  auto adj = [](const oracle_detail::M22<BigInt>& m) {
    return oracle_detail::M22<BigInt>{m.d, -m.b, -m.c, m.a};
  };
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e1 = entries[i];
    // +-identity words are elementary against everything
    if (e1.m.b == 0 && e1.m.c == 0 && e1.m.a == e1.m.d) continue;
    const BigInt tr1 = e1.m.a + e1.m.d;
    const BigInt lhs1_num = oracle_detail::abs_int(tr1 * tr1 - 4 * e1.den * e1.den);  // over den1^2
    for (std::size_t j = 0; j < entries.size(); ++j) {
      if (i == j) continue;
      const auto& e2 = entries[j];
      if (e2.m.b == 0 && e2.m.c == 0 && e2.m.a == e2.m.d) continue;
      report.pairs_checked += 1;
      const auto comm = oracle_detail::mul(oracle_detail::mul(e1.m, e2.m), oracle_detail::mul(adj(e1.m), adj(e2.m)));
      const BigInt dc = e1.den * e1.den * e2.den * e2.den;
      const BigInt trc = comm.a + comm.d;
      if (trc == 2 * dc) continue;  // elementary pair (commutator trace 2)
      // |tr1^2 - 4 den1^2|/den1^2 + |trc - 2 dc|/dc  vs  1, over denominator dc
      const BigInt lhs = lhs1_num * e2.den * e2.den + oracle_detail::abs_int(trc - 2 * dc);
      if (lhs < dc) {
        report.violation_count += 1;
        if (report.violations.size() < SearchReport::sample_cap)
          report.violations.emplace_back(e1.word, e2.word);
      }
    }
  }
  return report;
}

// Re-checks a verdict against the original triple: ping-pong plus a clean
// sweep for discreteness, witness re-evaluation for the others.
inline bool cross_validate(const RTriple& t, const Verdict<Rational>& v, const RConfig& cfg, int oracle_length = 10) {
  (void)cfg;
  const auto gens = matrices_from_triple(t);
  return std::visit(
      [&](const auto& verdict) -> bool {
        using V = std::decay_t<decltype(verdict)>;
        if constexpr (std::is_same_v<V, DiscreteVerdict<Rational>>) {
          if (!verify_pingpong(verdict.certificate)) return false;
          return clean_to_length(gens, oracle_length);
        } else if constexpr (std::is_same_v<V, EllipticWitnessVerdict<Rational>>) {
          const Rational tr = trace(evaluate_word(verdict.word, gens));
          return tr == verdict.trace && abs_val(tr) < 2;
        } else if constexpr (std::is_same_v<V, DegenerateVerdict>) {
          if (verdict.witness.empty()) return true;
          return is_psl_identity(evaluate_word(verdict.witness, gens));
        } else {
          return true;  // Undetermined is vacuously consistent
        }
      },
      v);
}

}  // namespace fourps
