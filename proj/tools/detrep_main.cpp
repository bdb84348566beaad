#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "detrep/compose.hpp"
#include "detrep/io.hpp"
#include "detrep/mep.hpp"
#include "detrep/verify.hpp"

namespace {

using namespace detrep;

std::uint64_t env_seed() {
  if (const char* s = std::getenv("DETREP_SEED")) {
    try {
      return std::stoull(s);
    } catch (...) {
      // fall through to the default
    }
  }
  return 0;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << std::endl;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ParseError("cannot open " + out_path + " for writing");
  out << text << "\n";
}

int run_repr(const std::string& poly_path, std::uint64_t seed, double delta,
             int samples, double eps, bool text_dump,
             const std::string& out_path, const std::string& record_path) {
  const BivariatePoly p = read_poly_file(poly_path);
  const RobustResult rr = robust_construct(p, delta, seed, samples, eps);
  if (!record_path.empty() && rr.constructed) {
    write_output(to_json(rr.normalization).dump(), record_path);
  }
  if (!rr.passed) {
    std::cerr << "representation failed: " << rr.diagnostic << "\n";
    if (rr.constructed) {
      write_output(text_dump ? format_pencil(rr.rep) : to_json(rr.rep).dump(),
                   out_path);
    }
    return 2;
  }
  write_output(text_dump ? format_pencil(rr.rep) : to_json(rr.rep).dump(),
               out_path);
  return 0;
}

int run_verify(const std::string& poly_path, const std::string& rep_path,
               int samples, double eps, double delta, std::uint64_t seed) {
  const BivariatePoly p = read_poly_file(poly_path);
  std::ifstream in(rep_path);
  if (!in) throw ParseError("cannot open " + rep_path);
  nlohmann::json j;
  in >> j;
  const PencilRep rep = pencil_from_json(j);
  const QualityReport report = quality(p, rep, samples, eps, delta, seed);
  std::cout << to_json(report).dump() << std::endl;
  return report.passed ? 0 : 2;
}

int run_solve(const std::string& p_path, const std::string& q_path,
              bool refine, std::uint64_t seed, double delta,
              const std::string& format) {
  const BivariatePoly p = read_poly_file(p_path);
  const BivariatePoly q = read_poly_file(q_path);
  const RootSet roots = solve_system(p, q, seed, refine, delta);
  if (format == "csv") {
    std::cout << roots_to_csv(roots);
  } else {
    std::cout << to_json(roots).dump() << std::endl;
  }
  return 0;
}

int run_compose(const std::vector<std::string>& factor_specs, double delta,
                std::uint64_t seed) {
  std::vector<Factor> factors;
  for (const std::string& spec : factor_specs) {
    Factor f;
    std::string path = spec;
    const auto colon = spec.rfind(':');
    if (colon != std::string::npos && colon + 1 < spec.size() &&
        spec.find('.', colon) == std::string::npos) {
      path = spec.substr(0, colon);
      try {
        f.multiplicity = std::stoi(spec.substr(colon + 1));
      } catch (...) {
        throw ParseError("bad factor spec \"" + spec +
                         "\", expected file.poly:multiplicity");
      }
    }
    f.poly = read_poly_file(path);
    factors.push_back(std::move(f));
  }
  const PencilRep rep = represent_factored(factors, delta, seed);
  std::cout << to_json(rep).dump() << std::endl;
  return 0;
}

int run_eval(const std::string& poly_path, const std::vector<double>& at) {
  if (at.size() != 2 && at.size() != 4) {
    throw ParseError("--at expects \"x y\" or \"x_re y_re x_im y_im\"");
  }
  const BivariatePoly p = read_poly_file(poly_path);
  const Complex x(at[0], at.size() == 4 ? at[2] : 0.0);
  const Complex y(at[1], at.size() == 4 ? at[3] : 0.0);
  const Complex v = eval(p, x, y);
  char buf[96];
  if (v.imag() == 0.0) {
    std::snprintf(buf, sizeof(buf), "%.17g", v.real());
  } else {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g", v.real(), v.imag());
  }
  std::cout << buf << std::endl;
  return 0;
}

BivariatePoly random_full_poly(int degree, Rng& rng, bool complex_coeffs) {
  BivariatePoly p(degree);
  for (int i = 0; i <= degree; ++i) {
    for (int j = 0; j <= degree - i; ++j) {
      p.set(i, j, complex_coeffs ? rng.complex_uniform01()
                                 : Complex(rng.uniform01(), 0.0));
    }
  }
  return p;
}

int run_bench(const std::string& degrees, int trials, std::uint64_t seed,
              double delta) {
  int lo = 3, hi = 10;
  const auto dots = degrees.find("..");
  if (dots != std::string::npos) {
    lo = std::stoi(degrees.substr(0, dots));
    hi = std::stoi(degrees.substr(dots + 2));
  } else if (!degrees.empty()) {
    lo = hi = std::stoi(degrees);
  }
  if (lo < 1 || hi < lo) throw ParseError("bad --degrees range");

  std::cout << "degree mean_ms pass_rate\n";
  for (int n = lo; n <= hi; ++n) {
    double total_ms = 0.0;
    int passed = 0;
    int runs = 0;
    for (int kind = 0; kind < 2; ++kind) {  // real then complex coefficients
      for (int t = 0; t < trials; ++t) {
        Rng rng(sub_seed(seed, (static_cast<std::uint64_t>(n) << 20) +
                                   (kind << 16) + t));
        const BivariatePoly p = random_full_poly(n, rng, kind == 1);
        const BivariatePoly q = random_full_poly(n, rng, kind == 1);
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        try {
          const RootSet roots =
              solve_system(p, q, sub_seed(seed, 7777 + runs), false, delta);
          ok = roots.count() == static_cast<std::size_t>(n) * n;
        } catch (const NumericalError&) {
          ok = false;
        }
        const auto t1 = std::chrono::steady_clock::now();
        total_ms +=
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        passed += ok ? 1 : 0;
        ++runs;
      }
    }
    char row[96];
    std::snprintf(row, sizeof(row), "%d %.2f %.3f", n, total_ms / runs,
                  static_cast<double>(passed) / runs);
    std::cout << row << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal determinantal representations of bivariate "
               "polynomials and root finding for systems of two"};
  app.require_subcommand(1);

  std::string poly_path, rep_path, p_path, q_path, out_path, record_path;
  std::string format = "json", degrees = "3..10";
  std::vector<std::string> factor_specs;
  std::vector<double> at;
  std::uint64_t seed = env_seed();
  double delta = detrep::kDefaultDelta;
  double eps = detrep::kDefaultEps;
  int samples = detrep::kDefaultSamples;
  int trials = 50;
  bool text_dump = false, refine = false;

  CLI::App* repr = app.add_subcommand("repr", "construct a representation");
  repr->add_option("--poly", poly_path)->required();
  repr->add_option("--seed", seed);
  repr->add_option("--delta", delta);
  repr->add_option("--k", samples);
  repr->add_option("--eps", eps);
  repr->add_option("--out", out_path);
  repr->add_option("--record", record_path);
  repr->add_flag("--text", text_dump, "plain-text matrix dump");

  CLI::App* verify = app.add_subcommand("verify", "score a representation");
  verify->add_option("--poly", poly_path)->required();
  verify->add_option("--rep", rep_path)->required();
  verify->add_option("--k", samples);
  verify->add_option("--eps", eps);
  verify->add_option("--delta", delta);
  verify->add_option("--seed", seed);

  CLI::App* solve = app.add_subcommand("solve", "roots of a system of two");
  solve->add_option("--p", p_path)->required();
  solve->add_option("--q", q_path)->required();
  solve->add_flag("--refine", refine, "one Newton step per root");
  solve->add_option("--seed", seed);
  solve->add_option("--delta", delta);
  solve->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  CLI::App* compose = app.add_subcommand(
      "compose", "block-diagonal representation from square-free factors");
  compose->add_option("--factors", factor_specs, "file.poly[:multiplicity]")
      ->required()
      ->expected(-1);
  compose->add_option("--seed", seed);
  compose->add_option("--delta", delta);

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a polynomial");
  eval_cmd->add_option("--poly", poly_path)->required();
  eval_cmd->add_option("--at", at, "x y [x_im y_im]")->required()->expected(2, 4);

  CLI::App* bench = app.add_subcommand("bench", "timing/accuracy table");
  bench->add_option("--degrees", degrees, "range, e.g. 3..8");
  bench->add_option("--trials", trials, "systems per degree and kind");
  bench->add_option("--seed", seed);
  bench->add_option("--delta", delta);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (repr->parsed()) {
      return run_repr(poly_path, seed, delta, samples, eps, text_dump,
                      out_path, record_path);
    }
    if (verify->parsed()) {
      return run_verify(poly_path, rep_path, samples, eps, delta, seed);
    }
    if (solve->parsed()) {
      return run_solve(p_path, q_path, refine, seed, delta, format);
    }
    if (compose->parsed()) return run_compose(factor_specs, delta, seed);
    if (eval_cmd->parsed()) return run_eval(poly_path, at);
    if (bench->parsed()) return run_bench(degrees, trials, seed, delta);
  } catch (const detrep::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const detrep::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
