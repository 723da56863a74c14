#pragma once

// JSON input/output documents and word serialization for the command line
// front end. Exact-mode values travel as "p/q" strings, never as floats.

#include <json.hpp>

#include <array>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fourps/algorithm.hpp"
#include "fourps/canonical.hpp"
#include "fourps/moebius.hpp"
#include "fourps/scalar.hpp"

namespace fourps {

using Json = nlohmann::json;

// --- word strings: "ABC", "A^2BC^-1" ----------------------------------------

inline std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const Letter& l : w) {
    out += "ABC"[static_cast<int>(l.gen)];
    if (l.exp != 1) out += "^" + std::to_string(l.exp);
  }
  return out;
}

inline Word parse_word(const std::string& text) {
  if (text == "1") return {};
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    Gen g;
    if (ch == 'A') g = Gen::A;
    else if (ch == 'B') g = Gen::B;
    else if (ch == 'C') g = Gen::C;
    else throw std::invalid_argument("bad word letter: '" + std::string(1, ch) + "'");
    ++i;
    std::int64_t exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      bool neg = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
      std::int64_t v = 0;
      bool any = false;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        any = true;
        ++i;
      }
      if (!any) throw std::invalid_argument("bad word exponent in '" + text + "'");
      exp = neg ? -v : v;
    }
    w.push_back({g, exp});
  }
  return reduced(w);
}

// --- input document -----------------------------------------------------------

struct InputDocument {
  std::optional<std::array<Rational, 3>> triple;
  std::optional<std::array<RMat2, 3>> matrices;
  std::optional<Rational> epsilon;
  std::optional<Rational> delta;
  std::optional<long> max_iterations;
  std::string arithmetic = "exact";
  std::optional<double> tolerance;
};

namespace io_detail {

inline Rational scalar_from_json(const Json& j, const char* what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw std::invalid_argument(std::string(what) +
                              ": use a \"p/q\" or decimal string (non-integer JSON numbers are not exact)");
}

}  // namespace io_detail

inline InputDocument parse_input_document(const Json& j) {
  InputDocument doc;
  if (!j.is_object()) throw std::invalid_argument("input document must be a JSON object");
  const bool has_triple = j.contains("triple");
  const bool has_matrices = j.contains("matrices");
  if (has_triple == has_matrices)
    throw std::invalid_argument("provide exactly one of \"triple\" or \"matrices\"");
  if (has_triple) {
    const Json& t = j.at("triple");
    if (!t.is_array() || t.size() != 3) throw std::invalid_argument("\"triple\" must hold three values");
    doc.triple = std::array<Rational, 3>{io_detail::scalar_from_json(t[0], "triple[0]"),
                                         io_detail::scalar_from_json(t[1], "triple[1]"),
                                         io_detail::scalar_from_json(t[2], "triple[2]")};
  } else {
    const Json& ms = j.at("matrices");
    if (!ms.is_array() || ms.size() != 3) throw std::invalid_argument("\"matrices\" must hold three matrices");
    std::array<RMat2, 3> out;
    for (int k = 0; k < 3; ++k) {
      const Json& m = ms[k];
      if (!m.is_array() || m.size() != 4) throw std::invalid_argument("each matrix needs four entries [a,b,c,d]");
      out[k] = rmat2(io_detail::scalar_from_json(m[0], "matrix entry"), io_detail::scalar_from_json(m[1], "matrix entry"),
                     io_detail::scalar_from_json(m[2], "matrix entry"), io_detail::scalar_from_json(m[3], "matrix entry"));
    }
    doc.matrices = out;
  }
  if (j.contains("epsilon")) doc.epsilon = io_detail::scalar_from_json(j.at("epsilon"), "epsilon");
  if (j.contains("delta")) doc.delta = io_detail::scalar_from_json(j.at("delta"), "delta");
  if (j.contains("max_iterations")) doc.max_iterations = j.at("max_iterations").get<long>();
  if (j.contains("arithmetic")) {
    doc.arithmetic = j.at("arithmetic").get<std::string>();
    if (doc.arithmetic != "exact" && doc.arithmetic != "approx")
      throw std::invalid_argument("\"arithmetic\" must be \"exact\" or \"approx\"");
  }
  if (j.contains("tolerance")) {
    const Json& tol = j.at("tolerance");
    doc.tolerance = tol.is_string() ? to_double(parse_rational(tol.get<std::string>())) : tol.get<double>();
  }
  return doc;
}

// --- output document ------------------------------------------------------------

template <class S>
const char* verdict_tag(const Verdict<S>& v) {
  return std::visit(
      [](const auto& verdict) -> const char* {
        using V = std::decay_t<decltype(verdict)>;
        if constexpr (std::is_same_v<V, DiscreteVerdict<S>>) return "discrete";
        else if constexpr (std::is_same_v<V, EllipticWitnessVerdict<S>>) return "elliptic_witness";
        else if constexpr (std::is_same_v<V, DegenerateVerdict>)
          return verdict.kind == DegenerateKind::TwoGenerator ? "degenerate_two_generator" : "degenerate_relation";
        else return "undetermined";
      },
      v);
}

template <class S>
int exit_code_for(const Verdict<S>& v) {
  if (std::holds_alternative<DiscreteVerdict<S>>(v)) return 0;
  if (std::holds_alternative<UndeterminedVerdict>(v)) return 2;
  return 1;
}

namespace io_detail {

template <class S>
Json boundary_to_json(const BoundaryPoint<S>& p) {
  return p.infinite ? Json("inf") : Json(format_scalar(p.v));
}

template <class S>
Json interval_to_json(const Interval<S>& iv) {
  return Json::array({format_scalar(iv.lo), format_scalar(iv.hi)});
}

template <class S>
Json certificate_to_json(const DiscreteVerdict<S>& d) {
  Json cert;
  cert["strip"] = Json::array({format_scalar(d.certificate.strip_left), format_scalar(d.certificate.strip_right)});
  Json pairs = Json::array();
  const char* names[] = {"B", "C"};
  for (std::size_t i = 0; i < d.certificate.pairs.size(); ++i) {
    Json p;
    p["generator"] = i < 2 ? names[i] : "?";
    p["minus"] = interval_to_json(d.certificate.pairs[i].minus);
    p["plus"] = interval_to_json(d.certificate.pairs[i].plus);
    pairs.push_back(p);
  }
  cert["pairs"] = pairs;
  Json dom;
  dom["p"] = format_scalar(d.domain.p);
  dom["c_of_p"] = format_scalar(d.domain.q);
  dom["mirror"] = format_scalar(d.domain.mirror);
  dom["b_edge"] = format_scalar(d.domain.b_edge);
  Json geos = Json::array();
  for (const auto& g : d.domain.geodesics) geos.push_back(Json::array({boundary_to_json(g.e1), boundary_to_json(g.e2)}));
  dom["geodesics"] = geos;
  cert["domain"] = dom;
  return cert;
}

}  // namespace io_detail

template <class S>
Json output_document(const Verdict<S>& v, const ParabolicTriple<S>& normalized, long iterations,
                     const AlgorithmConfig<S>& cfg, const std::string& arithmetic,
                     std::optional<double> tolerance) {
  Json out;
  out["verdict"] = verdict_tag(v);
  out["certificate"] = nullptr;
  out["witness_word"] = nullptr;
  out["witness_trace"] = nullptr;
  out["undetermined_reason"] = nullptr;
  std::visit(
      [&](const auto& verdict) {
        using V = std::decay_t<decltype(verdict)>;
        if constexpr (std::is_same_v<V, DiscreteVerdict<S>>) {
          out["certificate"] = io_detail::certificate_to_json(verdict);
        } else if constexpr (std::is_same_v<V, EllipticWitnessVerdict<S>>) {
          out["witness_word"] = word_to_string(verdict.word);
          out["witness_trace"] = format_scalar(verdict.trace);
        } else if constexpr (std::is_same_v<V, DegenerateVerdict>) {
          if (!verdict.witness.empty()) out["witness_word"] = word_to_string(verdict.witness);
          if (!verdict.note.empty()) out["note"] = verdict.note;
        } else {
          out["undetermined_reason"] =
              verdict.reason == UndeterminedReason::BudgetExhausted ? "budget_exhausted" : "tolerance_band";
        }
      },
      v);
  out["normalized_triple"] =
      Json::array({format_scalar(normalized.x), format_scalar(normalized.y), format_scalar(normalized.z)});
  out["iterations"] = iterations;
  Json config;
  config["epsilon"] = format_scalar(cfg.epsilon);
  config["delta"] = format_scalar(cfg.delta);
  config["max_iterations"] = cfg.max_iterations;
  config["arithmetic"] = arithmetic;
  config["tolerance"] = tolerance ? Json(*tolerance) : Json(nullptr);
  out["config_used"] = config;
  return out;
}

}  // namespace fourps
