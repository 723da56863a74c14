// Command line front end: decide whether three parabolic generators span a
// discrete free group, emit a JSON verdict document and optionally an SVG of
// the Ford configuration.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fourps/io.hpp"
#include "fourps/oracle.hpp"
#include "fourps/svg.hpp"

namespace {

struct Options {
  std::string input_path;
  std::vector<std::string> triple;
  std::string epsilon;
  std::string delta;
  long max_iters = 0;
  bool max_iters_set = false;
  std::string arith;
  double tolerance = 1e-12;
  bool tolerance_set = false;
  std::string svg_path;
  bool oracle_check = false;
  int max_word_len = 10;
};

template <class S>
int run_typed(const fourps::InputDocument& doc, const Options& opt, double tol) {
  using namespace fourps;

  AlgorithmConfig<S> cfg;
  if (doc.epsilon) cfg.epsilon = scalar_from_rational<S>(*doc.epsilon, 0.0);
  if (doc.delta) cfg.delta = scalar_from_rational<S>(*doc.delta, 0.0);
  if (doc.max_iterations) cfg.max_iterations = *doc.max_iterations;

  std::optional<ParabolicTriple<S>> triple;
  if (doc.triple) {
    triple.emplace(scalar_from_rational<S>((*doc.triple)[0], tol), scalar_from_rational<S>((*doc.triple)[1], tol),
                   scalar_from_rational<S>((*doc.triple)[2], tol));
  } else {
    std::array<Mat2<S>, 3> raw;
    for (int k = 0; k < 3; ++k)
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) raw[k](r, c) = scalar_from_rational<S>((*doc.matrices)[k](r, c), tol);
    triple.emplace(normalize(raw).triple);
  }

  const Decision<S> result = decide_full(*triple, cfg);
  Json out = output_document(result.verdict, *triple, result.iterations, cfg, doc.arithmetic,
                             doc.arithmetic == "approx" ? std::optional<double>(tol) : std::nullopt);

  if (opt.oracle_check) {
    if constexpr (std::is_same_v<S, Rational>) {
      RConfig rcfg;
      rcfg.epsilon = cfg.epsilon;
      rcfg.delta = cfg.delta;
      rcfg.max_iterations = cfg.max_iterations;
      out["oracle_consistent"] = cross_validate(*triple, result.verdict, rcfg, opt.max_word_len);
    } else {
      throw std::invalid_argument("--oracle-check requires exact arithmetic");
    }
  }

  std::cout << out.dump(2) << "\n";

  if (!opt.svg_path.empty()) {
    std::ofstream svg(opt.svg_path);
    if (!svg) throw std::invalid_argument("cannot open SVG output path: " + opt.svg_path);
    emit_svg(svg, *triple, result.verdict);
  }

  return exit_code_for(result.verdict);
}

int run(const Options& opt) {
  using namespace fourps;

  Json j;
  if (!opt.input_path.empty()) {
    std::ifstream in(opt.input_path);
    if (!in) throw std::invalid_argument("cannot open input file: " + opt.input_path);
    in >> j;
  } else {
    j = Json::object();
    j["triple"] = Json::array({opt.triple[0], opt.triple[1], opt.triple[2]});
  }
  InputDocument doc = parse_input_document(j);

  // command line flags override the document
  if (!opt.epsilon.empty()) doc.epsilon = parse_rational(opt.epsilon);
  if (!opt.delta.empty()) doc.delta = parse_rational(opt.delta);
  if (opt.max_iters_set) doc.max_iterations = opt.max_iters;
  if (!opt.arith.empty()) doc.arithmetic = opt.arith;
  if (opt.tolerance_set) doc.tolerance = opt.tolerance;

  const double tol = doc.tolerance.value_or(1e-12);
  if (doc.arithmetic == "approx") return run_typed<Approx>(doc, opt, tol);
  return run_typed<Rational>(doc, opt, 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discreteness decision for groups generated by three parabolic isometries"};
  Options opt;

  auto* input = app.add_option("--input", opt.input_path, "JSON input document");
  auto* triple = app.add_option("--triple", opt.triple, "coordinates x y z as p/q or decimal strings")->expected(3);
  input->excludes(triple);
  app.add_option("--epsilon", opt.epsilon, "set-up closeness parameter (rational string, default 1/10)");
  app.add_option("--delta", opt.delta, "minimal-position slack (rational string, default 1/100)");
  app.add_option("--max-iters", opt.max_iters, "iteration budget (default 10000)")
      ->check(CLI::NonNegativeNumber)
      ->each([&](const std::string&) { opt.max_iters_set = true; });
  app.add_option("--arith", opt.arith, "arithmetic backend: exact | approx")
      ->check(CLI::IsMember({"exact", "approx"}));
  app.add_option("--tolerance", opt.tolerance, "tolerance for the approximate backend (default 1e-12)")
      ->each([&](const std::string&) { opt.tolerance_set = true; });
  app.add_option("--svg", opt.svg_path, "write an SVG figure of the configuration");
  app.add_flag("--oracle-check", opt.oracle_check, "re-verify the verdict with the word-enumeration oracle");
  app.add_option("--max-word-len", opt.max_word_len, "oracle sweep length for --oracle-check (default 10)")
      ->check(CLI::Range(1, 12));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  if (opt.input_path.empty() && opt.triple.size() != 3) {
    std::cerr << "error: provide --triple X Y Z or --input FILE\n";
    return 64;
  }

  try {
    return run(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  }
}
