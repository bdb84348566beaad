// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each criterion pins its thresholds in place.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "detrep/compose.hpp"
#include "detrep/mep.hpp"
#include "detrep/verify.hpp"
#include "helpers.hpp"

using namespace detrep;
using namespace detrep::testing;

namespace {

int g_failures = 0;

struct Check {
  std::string name;
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    } else if (!cond) {
      detail += "; " + what;
    }
  }
  void finish(double seconds) {
    std::printf("[%s] %s (%.3f s)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
                seconds, detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
  }
};

double now_between(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

void criterion_example1() {
  Check c{"example1-golden"};
  const auto t0 = std::chrono::steady_clock::now();

  const BivariatePoly p = example1();
  const ConstructionResult res = construct_detailed(p);
  const double construct_seconds = now_between(t0);

  // (i) roots of the reduced boundary, ordered.
  const std::vector<Complex> want_xi{-2, -1, 1, 2};
  c.require(res.frame.xi.size() == 4, "expected four roots");
  for (int k = 0; k < 4; ++k) {
    c.require(close(res.frame.xi[k], want_xi[k], 1e-12),
              "root " + std::to_string(k) + " off");
  }

  // (ii) alpha, beta, gamma_1 and the final residual, all to 1e-10.
  const CoefficientFrame& f = res.frame;
  c.require(close(f.alpha(4, 2), Complex(2.0), 1e-10), "alpha_42");
  c.require(close(f.alpha(4, 3), Complex(1.0), 1e-10), "alpha_43");
  c.require(close(f.alpha(4, 4), Complex(1.0), 1e-10), "alpha_44");
  c.require(close(f.beta_at(2, 2), Complex(1.0), 1e-10), "beta_22");
  c.require(close(f.beta_at(3, 2), Complex(0.5), 1e-10), "beta_32");
  c.require(close(f.beta_at(4, 2), Complex(-1.0), 1e-10), "beta_42");
  c.require(close(f.beta_at(3, 3), Complex(2.0), 1e-10), "beta_33");
  c.require(close(f.beta_at(4, 3), Complex(-0.5), 1e-10), "beta_43");
  c.require(close(f.beta_at(4, 4), Complex(-1.5), 1e-10), "beta_44");
  c.require(close(f.gamma[1], Complex(-2.0), 1e-10), "gamma_1");
  c.require(close(f.gamma00, Complex(1.0), 1e-10), "final residual r00");
  c.require(close(f.gamma10, Complex(2.0), 1e-10), "final residual r10");

  // (iii) scaled quality score over 200 points.
  const QualityReport report = quality(p, res.rep, 200, 1e-4, 1e-8, 0);
  c.require(report.scaled <= 1e-8, "scaled quality score above 1e-8");

  // (iv) gamma_2 and gamma_3 resolved by the annihilation requirement: the
  // pure-y coefficient of each residual vanishes after the gamma step.
  c.require(close(f.gamma[3], Complex(2.0), 1e-10), "gamma_3");
  c.require(close(f.gamma[2], Complex(-3.0), 1e-10), "gamma_2");
  for (const StepTrace& st : res.steps) {
    c.require(st.annihilation_residual <= 1e-10 * p.max_abs(),
              "annihilation residual at k=" + std::to_string(st.k));
  }

  c.require(construct_seconds < 0.1, "construction exceeded 0.1 s");
  c.finish(now_between(t0));
}

void criterion_randomized_construction() {
  Check c{"randomized-construction"};
  const auto t0 = std::chrono::steady_clock::now();

  for (int n = 3; n <= 10; ++n) {
    int passed = 0;
    int total = 0;
    for (int kind = 0; kind < 2; ++kind) {
      for (int t = 0; t < 50; ++t) {
        Rng rng(sub_seed(0xACC0, (n << 16) + (kind << 8) + t));
        const BivariatePoly p = random_full(n, rng, kind == 1);
        const RobustResult rr =
            robust_construct(p, 1e-8, sub_seed(0xACC1, (n << 16) + t + kind));
        passed += rr.passed ? 1 : 0;
        ++total;
      }
    }
    const double rate = static_cast<double>(passed) / total;
    if (rate < 0.90) {
      c.require(false, "degree " + std::to_string(n) + " pass rate " +
                           std::to_string(rate));
    }
  }

  // Recorded but not required: quality degrades above degree 10.
  for (int n = 11; n <= 12; ++n) {
    int passed = 0;
    const int total = 20;
    for (int t = 0; t < total; ++t) {
      Rng rng(sub_seed(0xACC2, (n << 16) + t));
      const BivariatePoly p = random_full(n, rng, false);
      const RobustResult rr = robust_construct(p, 1e-8, sub_seed(0xACC3, t));
      passed += rr.passed ? 1 : 0;
    }
    std::printf("[INFO] degree %d pass rate %.2f (recorded, not required)\n",
                n, static_cast<double>(passed) / total);
  }

  const double seconds = now_between(t0);
  c.require(seconds < 60.0, "suite exceeded 60 s");
  c.finish(seconds);
}

void criterion_system_solving() {
  Check c{"system-solving"};
  const auto t0 = std::chrono::steady_clock::now();

  const int degrees[] = {3, 4, 5, 6, 8};
  for (const int n : degrees) {
    int good_roots = 0;
    int all_roots = 0;
    double worst_seconds = 0.0;
    for (int t = 0; t < 20; ++t) {
      Rng rng(sub_seed(0x5457, (n << 16) + t));
      const BivariatePoly p = random_full(n, rng, false);
      const BivariatePoly q = random_full(n, rng, false);
      const auto s0 = std::chrono::steady_clock::now();
      RootSet roots;
      try {
        roots = solve_system(p, q, sub_seed(0x5458, (n << 16) + t));
      } catch (const NumericalError& e) {
        c.require(false, "degree " + std::to_string(n) + " system " +
                             std::to_string(t) + ": " + e.what());
        continue;
      }
      worst_seconds = std::max(worst_seconds, now_between(s0));
      c.require(roots.count() == static_cast<std::size_t>(n) * n,
                "degree " + std::to_string(n) + ": eigenvalue count");
      const double bound_p = 1e-6 * (1.0 + p.max_abs());
      const double bound_q = 1e-6 * (1.0 + q.max_abs());
      for (const SystemRoot& r : roots.roots) {
        ++all_roots;
        if (r.res_p < bound_p && r.res_q < bound_q) ++good_roots;
      }
    }
    if (all_roots > 0 &&
        static_cast<double>(good_roots) / all_roots < 0.95) {
      c.require(false, "degree " + std::to_string(n) + " residual rate " +
                           std::to_string(static_cast<double>(good_roots) /
                                          all_roots));
    }
    if (n == 8) {
      c.require(worst_seconds < 1.0, "a degree-8 system exceeded 1 s");
    }
  }
  c.finish(now_between(t0));
}

void criterion_property_suite() {
  Check c{"property-suite"};
  const auto t0 = std::chrono::steady_clock::now();

  // Residual descent and the triangular, nonsingular beta system on twenty
  // random degree-9 runs.
  for (int t = 0; t < 20; ++t) {
    Rng rng(sub_seed(0x9909, t));
    const BivariatePoly p = random_normalized(9, rng);
    const ConstructionResult res = construct_detailed(p);
    const double scale = p.max_abs();
    for (const StepTrace& st : res.steps) {
      const int n = res.frame.n;
      c.require(st.r_poly.true_degree(1e-7) == n - st.k,
                "residual degree at k=" + std::to_string(st.k));
      c.require(std::abs(st.r_poly.coeff(0, n - st.k)) <= 1e-9 * scale,
                "pure-y coefficient at k=" + std::to_string(st.k));
      const Eigen::MatrixXcd w = beta_system_matrix(res.frame.xi, n, st.k);
      const double max_w = w.cwiseAbs().maxCoeff();
      for (Eigen::Index row = 0; row < w.rows(); ++row) {
        c.require(std::abs(w(row, row)) > 1e-12 * max_w, "W diagonal");
        for (Eigen::Index col = row + 1; col < w.cols(); ++col) {
          c.require(w(row, col) == Complex(0.0), "W upper triangle");
        }
      }
    }
  }

  // pull_back round trip on twenty random transforms.
  {
    Rng rng(0xB007);
    const BivariatePoly p = random_normalized(4, rng);
    const PencilRep rep = construct(p);
    for (int t = 0; t < 20; ++t) {
      const ProjectiveTransform tr = ProjectiveTransform::random(rng);
      const BivariatePoly pt = apply_transform(p, tr);
      const PencilRep rep_t = pull_back(rep, tr.inverse());
      // det(rep_t) represents apply_transform(p, tr^{-1})... round trip:
      const PencilRep back = pull_back(rep_t, tr);
      for (int s = 0; s < 20; ++s) {
        const Complex x = rng.complex_uniform01();
        const Complex y = rng.complex_uniform01();
        const Complex want = eval(p, x, y);
        c.require(std::abs(back.det_at(x, y) - want) <=
                      1e-9 * (1.0 + std::abs(want)) * back.max_inf_norm(),
                  "pull_back round trip");
      }
      (void)pt;
    }
  }

  // Block-diagonal multiplicativity.
  {
    Rng rng(0xB10C);
    const BivariatePoly p1 = random_normalized(3, rng);
    const BivariatePoly p2 = random_normalized(4, rng);
    const PencilRep r1 = construct(p1);
    const PencilRep r2 = construct(p2);
    const PencilRep both = block_diag(std::vector<PencilRep>{r1, r2});
    for (int s = 0; s < 100; ++s) {
      const Complex x = rng.complex_uniform01();
      const Complex y = rng.complex_uniform01();
      const Complex want = r1.det_at(x, y) * r2.det_at(x, y);
      c.require(std::abs(both.det_at(x, y) - want) <=
                    1e-9 * (1.0 + std::abs(want)),
                "block-diagonal multiplicativity");
    }
  }

  // 1x1 two-parameter problem equals Cramer's rule exactly.
  {
    PencilRep a, b;
    a.A = Eigen::MatrixXcd::Constant(1, 1, Complex(1, 2));
    a.B = Eigen::MatrixXcd::Constant(1, 1, Complex(2, -1));
    a.C = Eigen::MatrixXcd::Constant(1, 1, Complex(0, 1));
    b.A = Eigen::MatrixXcd::Constant(1, 1, Complex(-1, 1));
    b.B = Eigen::MatrixXcd::Constant(1, 1, Complex(1, 1));
    b.C = Eigen::MatrixXcd::Constant(1, 1, Complex(3, 0));
    const DeltaOperators d = build_deltas(a, b);
    const std::vector<MepEigenpair> sol = solve_mep(d);
    c.require(sol.size() == 1, "1x1 solution count");
    c.require(sol[0].x == d.delta1(0, 0) / d.delta0(0, 0), "1x1 x exact");
    c.require(sol[0].y == d.delta2(0, 0) / d.delta0(0, 0), "1x1 y exact");
  }

  // normalize flags (x+y)^2 within the attempt budget.
  {
    const BivariatePoly sq =
        make_poly(2, {{2, 0, 1}, {1, 1, 2}, {0, 2, 1}});
    bool flagged = false;
    try {
      normalize(sq, 4711);
    } catch (const NumericalError& e) {
      flagged = e.code() == ErrorCode::likely_non_square_free;
    }
    c.require(flagged, "squared factor not flagged");
  }

  c.finish(now_between(t0));
}

void criterion_degenerate_cases() {
  Check c{"degenerate-cases"};
  const auto t0 = std::chrono::steady_clock::now();

  // n = 1: exact scalars.
  {
    const BivariatePoly p =
        make_poly(1, {{0, 0, Complex(0.5, 1)}, {1, 0, 3}, {0, 1, -2}});
    const PencilRep rep = construct(p);
    c.require(rep.order() == 1, "1x1 order");
    c.require(rep.A(0, 0) == Complex(0.5, 1), "1x1 A");
    c.require(rep.B(0, 0) == Complex(3.0), "1x1 B");
    c.require(rep.C(0, 0) == Complex(-2.0), "1x1 C");
  }

  // n = 2: the loop is empty and the pencil reproduces p to machine
  // precision at sample points.
  {
    const BivariatePoly p =
        make_poly(2, {{0, 0, 1}, {1, 0, 2}, {2, 0, 3}, {1, 1, 4}});
    const PencilRep rep = construct(p);
    c.require(rep.order() == 2, "2x2 order");
    Rng rng(0xDE6);
    for (int t = 0; t < 100; ++t) {
      const Complex x = rng.complex_uniform01();
      const Complex y = rng.complex_uniform01();
      const Complex want = eval(p, x, y);
      c.require(std::abs(rep.det_at(x, y) - want) <=
                    1e-13 * (1.0 + std::abs(want)),
                "2x2 determinant");
    }
  }

  // One zero root of the reduced boundary, ordered last: p_{1,n-1} = 0.
  {
    // v(xi) = xi^3 - xi with roots {-1, 0, 1}; zero goes last.
    const BivariatePoly p = make_poly(
        4, {{4, 0, 1}, {2, 2, -1}, {0, 0, 1}, {1, 0, 1}, {0, 1, 1},
            {1, 1, 1}});
    const ConstructionResult res = construct_detailed(p);
    c.require(res.frame.xi.size() == 3, "zero-root case root count");
    c.require(std::abs(res.frame.xi[2]) <= 1e-12, "zero root ordered last");
    const QualityReport report = quality(p, res.rep, 200, 1e-4, 1e-8, 9);
    c.require(report.scaled <= 1e-8, "zero-root case quality");
  }

  c.finish(now_between(t0));
}

}  // namespace

int main() {
  criterion_example1();
  criterion_randomized_construction();
  criterion_system_solving();
  criterion_property_suite();
  criterion_degenerate_cases();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
