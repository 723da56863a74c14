// Acceptance suite: one pass/fail line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fourps/io.hpp"
#include "fourps/oracle.hpp"
#include "fourps/svg.hpp"
#include "test_helpers.hpp"

using namespace fourps;
using fourps::testutil::Rng;

namespace {

struct Reporter {
  int checks = 0;
  int failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      if (notes.size() < 6) notes.push_back(what);
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  std::function<void(Reporter&)> run;
};

const RMat2 kA = rmat2(1, 2, 0, 1);

// --- criterion bodies -----------------------------------------------------

void criterion_products(Reporter& r) {
  Rng rng(1001);
  const RMat2 a_inv = inverse_unimodular(kA);
  for (int i = 0; i < 1000; ++i) {
    const RMat2 g = testutil::random_nonelliptic(rng);
    const RMat2 g_inv = inverse_unimodular(g);
    const bool direct = classify((kA * g).eval()) != IsometryClass::Elliptic &&
                        classify((a_inv * g).eval()) != IsometryClass::Elliptic &&
                        classify((g_inv * kA).eval()) != IsometryClass::Elliptic &&
                        classify((g_inv * a_inv).eval()) != IsometryClass::Elliptic;
    r.expect(products_nonelliptic(g) == direct, "criterion mismatch at sample " + std::to_string(i));
  }
}

void criterion_elliptic_power(Reporter& r) {
  Rng rng(1002);
  int kept = 0;
  while (kept < 1000) {
    const RMat2 g = testutil::random_nonelliptic(rng);
    if (abs_val(g(1, 0)) >= 2) continue;
    ++kept;
    const auto n = elliptic_power_exists(g);
    if (!n) {
      r.expect(false, "no elliptic power returned though the strength exceeds 1");
      continue;
    }
    const RMat2 prod = (unimodular_pow(kA, *n) * g).eval();
    r.expect(classify(prod) == IsometryClass::Elliptic, "A^n G is not elliptic");
  }
  std::uniform_int_distribution<int> pow(-50, 50);
  for (int i = 0; i < 1000; ++i) {
    const RMat2 g = testutil::random_nonelliptic(rng);
    const int n = pow(rng);
    r.expect(trace((unimodular_pow(kA, n) * g).eval()) == trace(g) + 2 * g(1, 0) * n,
             "trace identity failed");
  }
}

void criterion_conjugation_calculus(Reporter& r) {
  Rng rng(1003);
  int kept = 0;
  while (kept < 500) {
    const RTriple t = testutil::random_triple(rng, 8);
    if (t.y == 2 * t.x) continue;
    ++kept;
    const auto g = matrices_from_triple(t);
    const RMat2 cb = conjugate(g[2], g[1]);
    // strength two ways: closed formula against the conjugated matrix
    const Rational strength_formula = t.y * t.y * t.z / ((t.y - 2 * t.x) * (t.y - 2 * t.x));
    r.expect(ford_data(cb).strength == strength_formula, "strength of C^B disagrees with the formula");
    // fixed-point distance two ways
    const auto fp = fixed_points(cb);
    r.expect(fp.single.has_value() && !fp.single->infinite, "C^B lost its finite fixed point");
    if (fp.single && !fp.single->infinite) {
      const Rational dist_formula = t.x * t.y / abs_val(t.y - 2 * t.x);
      r.expect(abs_val(fp.single->v) == dist_formula, "distance of fixed points disagrees with the formula");
    }
  }
}

void criterion_ford_domain(Reporter& r) {
  const RTriple t(1, Rational(1, 4), Rational(1, 4));
  const auto start = std::chrono::steady_clock::now();
  const auto v = decide(t, RConfig{});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.expect(secs < 1.0, "decide took " + std::to_string(secs) + " s");
  const auto* d = std::get_if<DiscreteVerdict<Rational>>(&v);
  r.expect(d != nullptr, "verdict is not discrete");
  if (!d) return;
  r.expect(d->domain.p == Rational(7, 6), "p != 7/6");
  r.expect(d->domain.q == Rational(1, 2), "C(p) != 1/2");
  r.expect(d->domain.b_edge == Rational(-1, 2), "B-side contact != -1/2");
  r.expect(verify_pingpong(d->certificate), "certificate fails verification");
  const auto sweep = enumerate_words(matrices_from_triple(t), 10);
  r.expect(sweep.clean(), "oracle sweep at length 10 found elliptics or relations");
}

void criterion_elliptic_detection(Reporter& r) {
  const RTriple t(Rational(9, 10), Rational(1, 2), Rational(1, 2));
  const auto v = decide(t, RConfig{});
  const auto* w = std::get_if<EllipticWitnessVerdict<Rational>>(&v);
  r.expect(w != nullptr, "verdict is not an elliptic witness");
  if (!w) return;
  r.expect(word_to_string(w->word) == "ABC", "witness word is " + word_to_string(w->word));
  r.expect(w->trace == Rational(46, 25), "trace is " + format_rational(w->trace));
  const Rational re_eval = trace(evaluate_word(w->word, matrices_from_triple(t)));
  r.expect(re_eval == Rational(46, 25) && abs_val(re_eval) < 2, "re-evaluation failed");
}

void criterion_degenerate(Reporter& r) {
  Rng rng(1006);
  for (int i = 0; i < 100; ++i) {
    std::uniform_int_distribution<long> den(2, 16);
    const long q = den(rng);
    std::uniform_int_distribution<long> num(1, q);
    const Rational x(num(rng), q);
    if (x <= Rational(1, 25)) {
      --i;
      continue;
    }
    const Rational z = testutil::random_coordinate(rng, 4);
    const RTriple t(x, 2 * x, z);
    const auto v = decide(t, RConfig{});
    const auto* d = std::get_if<DegenerateVerdict>(&v);
    r.expect(d != nullptr && d->kind == DegenerateKind::TwoGenerator,
             "no two-generator verdict at x=" + format_rational(x) + " z=" + format_rational(z));
    if (d && !d->witness.empty())
      r.expect(is_psl_identity(evaluate_word(d->witness, matrices_from_triple(t))), "witness fails re-evaluation");
  }
  const auto v = decide(RTriple(1, 1, 1), RConfig{});
  const auto* d = std::get_if<DegenerateVerdict>(&v);
  r.expect(d != nullptr && d->kind == DegenerateKind::Relation, "no relation at the symmetric triple");
  if (d) r.expect(is_psl_identity(evaluate_word(d->witness, matrices_from_triple(RTriple(1, 1, 1)))),
                  "relation word does not evaluate to +-identity");
}

void criterion_cusped_family(Reporter& r) {
  Rng rng(1007);
  int kept = 0;
  while (kept < 50) {
    // draw s and a ratio so that (1-y)(1-z) = s^2 is a rational square
    const Rational s = testutil::random_positive_rational(rng, 9, 10);
    const Rational ratio = testutil::random_positive_rational(rng, 4, 4);
    if (s >= 1) continue;
    const Rational one_minus_y = s * ratio;
    const Rational one_minus_z = s / ratio;
    if (one_minus_y <= 0 || one_minus_y >= 1 || one_minus_z <= 0 || one_minus_z >= 1) continue;
    ++kept;
    const Rational y = 1 - one_minus_y;
    const Rational z = 1 - one_minus_z;
    const Rational x = 1 + s;
    const auto g = matrices_from_triple(RTriple(x, y, z));
    const Word abc = {{Gen::A, 1}, {Gen::B, 1}, {Gen::C, 1}};
    r.expect(trace(evaluate_word(abc, g)) == -2,
             "Tr(ABC) != -2 at y=" + format_rational(y) + " z=" + format_rational(z));
  }

  // the named instance: the criterion expects a discrete verdict with a
  // tangent-circle certificate
  const RTriple t(Rational(3, 2), Rational(1, 2), Rational(1, 2));
  r.expect(trace(evaluate_word({{Gen::A, 1}, {Gen::B, 1}, {Gen::C, 1}}, matrices_from_triple(t))) == -2,
           "Tr(ABC) != -2 at the instance");
  const auto v = decide(t, RConfig{});
  const auto* d = std::get_if<DiscreteVerdict<Rational>>(&v);
  std::string detail = std::string("expected discrete, got ") + verdict_tag(v);
  if (const auto* dg = std::get_if<DegenerateVerdict>(&v))
    detail += " with witness " + word_to_string(dg->witness);
  r.expect(d != nullptr, detail);
  if (d) r.expect(verify_pingpong(d->certificate), "certificate fails verification");
}

void criterion_oracle_sweep(Reporter& r) {
  Rng rng(1008);
  const RConfig cfg{};
  int discrete = 0;
  for (int i = 0; i < 200; ++i) {
    const RTriple t = testutil::random_triple(rng, 4);
    const auto v = decide(t, cfg);
    const bool ok = cross_validate(t, v, cfg, 10);
    r.expect(ok, std::string("cross validation failed on ") + verdict_tag(v) + " at (" + format_rational(t.x) +
                     "," + format_rational(t.y) + "," + format_rational(t.z) + ")");
    if (std::holds_alternative<DiscreteVerdict<Rational>>(v)) ++discrete;
    r.expect(!(std::holds_alternative<UndeterminedVerdict>(v) &&
               std::get<UndeterminedVerdict>(v).reason == UndeterminedReason::ToleranceBand),
             "exact backend returned a tolerance-band verdict");
  }
  // known discrete configurations keep the sweep non-vacuous
  for (const RTriple& t : {RTriple(1, Rational(1, 4), Rational(1, 4)),
                           RTriple(Rational(4, 5), Rational(1, 2), Rational(2, 5)),
                           RTriple(1, Rational(1, 2), Rational(1, 2))}) {
    const auto v = decide(t, cfg);
    r.expect(std::holds_alternative<DiscreteVerdict<Rational>>(v), "expected discrete instance");
    r.expect(cross_validate(t, v, cfg, 10), "cross validation failed on a discrete instance");
    ++discrete;
  }
  r.expect(discrete >= 3, "no discrete verdicts in the sweep");
}

void criterion_normalization(Reporter& r) {
  Rng rng(1009);
  for (int i = 0; i < 200; ++i) {
    const RTriple t = testutil::random_triple(rng, 6);
    const RMat2 x = testutil::random_pgl(rng);
    std::array<RMat2, 3> raw;
    const auto g = matrices_from_triple(t);
    for (int k = 0; k < 3; ++k) raw[k] = conjugate(g[k], x);
    try {
      const auto res = normalize(raw);
      r.expect(res.triple.x == t.x && res.triple.y == t.y && res.triple.z == t.z,
               "normalization did not recover the triple");
      const auto canon = matrices_from_triple(res.triple);
      for (int k = 0; k < 3; ++k) {
        RMat2 m = conjugate(raw[k], res.conjugator);
        if (res.inverted[k]) m = inverse_unimodular(m);
        r.expect(psl_equal(m, canon[k]), "conjugator does not rebuild the canonical form");
      }
    } catch (const std::exception& e) {
      r.expect(false, std::string("normalize threw: ") + e.what());
    }
  }
}

void criterion_determinism(Reporter& r) {
  Rng rng(1010);
  const RConfig cfg{};
  for (int i = 0; i < 30; ++i) {
    const RTriple t = testutil::random_triple(rng, 4);
    const auto d1 = decide_full(t, cfg);
    const auto d2 = decide_full(t, cfg);
    const std::string s1 = output_document(d1.verdict, t, d1.iterations, cfg, "exact", std::nullopt).dump();
    const std::string s2 = output_document(d2.verdict, t, d2.iterations, cfg, "exact", std::nullopt).dump();
    r.expect(s1 == s2, "repeated runs differ");
    r.expect(!(std::holds_alternative<UndeterminedVerdict>(d1.verdict) &&
               std::get<UndeterminedVerdict>(d1.verdict).reason == UndeterminedReason::ToleranceBand),
             "exact backend returned a tolerance-band verdict");
  }
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "product criterion agrees with direct classification (1000 samples)", criterion_products},
      {2, "elliptic powers exist and the trace identity holds (1000 samples each)", criterion_elliptic_power},
      {3, "conjugation calculus: strength and distance two ways (500 samples)", criterion_conjugation_calculus},
      {4, "ford domain construction at (1, 1/4, 1/4)", criterion_ford_domain},
      {5, "elliptic detection at (9/10, 1/2, 1/2)", criterion_elliptic_detection},
      {6, "degenerate detection (two-generator family and relation)", criterion_degenerate},
      {7, "cusped boundary family and its named instance", criterion_cusped_family},
      {8, "oracle consistency sweep (200 random triples)", criterion_oracle_sweep},
      {9, "normalization round trip (200 samples)", criterion_normalization},
      {10, "determinism and exactness (30 repeated runs)", criterion_determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Reporter rep;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(rep);
    } catch (const std::exception& e) {
      rep.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = rep.failures == 0;
    if (!ok) ++failed;
    std::printf("[%s] criterion %2d (%6.2fs, %d checks): %s\n", ok ? "PASS" : "FAIL", c.id, secs, rep.checks,
                c.name.c_str());
    for (const auto& note : rep.notes) std::printf("        - %s\n", note.c_str());
  }
  if (failed == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d criterion(s) failed\n", failed);
  }
  return failed;
}
