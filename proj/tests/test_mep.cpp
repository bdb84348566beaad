#include <doctest.h>

#include "detrep/mep.hpp"
#include "helpers.hpp"

using namespace detrep;
using namespace detrep::testing;

namespace {

PencilRep linear_rep(Complex a, Complex b, Complex c) {
  PencilRep rep;
  rep.A = Eigen::MatrixXcd::Constant(1, 1, a);
  rep.B = Eigen::MatrixXcd::Constant(1, 1, b);
  rep.C = Eigen::MatrixXcd::Constant(1, 1, c);
  return rep;
}

}  // namespace

TEST_CASE("1x1 operator determinants follow Cramer's rule exactly") {
  const Complex a1(2, 1), b1(3, -1), c1(1, 0);
  const Complex a2(-1, 2), b2(0.5, 0), c2(2, 2);
  const DeltaOperators d =
      build_deltas(linear_rep(a1, b1, c1), linear_rep(a2, b2, c2));
  REQUIRE(d.dim() == 1);
  CHECK(d.delta0(0, 0) == b1 * c2 - c1 * b2);
  CHECK(d.delta1(0, 0) == c1 * a2 - a1 * c2);
  CHECK(d.delta2(0, 0) == a1 * b2 - b1 * a2);

  const std::vector<MepEigenpair> sol = solve_mep(d);
  REQUIRE(sol.size() == 1);
  // Exactly the closed-form quotients of the operator determinants (the
  // analytic expressions below may be constant-folded with correct rounding,
  // so compare those to one ulp).
  CHECK(sol[0].x == d.delta1(0, 0) / d.delta0(0, 0));
  CHECK(sol[0].y == d.delta2(0, 0) / d.delta0(0, 0));
  CHECK(std::abs(sol[0].x - (c1 * a2 - a1 * c2) / (b1 * c2 - c1 * b2)) <
        1e-15);
  CHECK(std::abs(sol[0].y - (a1 * b2 - b1 * a2) / (b1 * c2 - c1 * b2)) <
        1e-15);

  // The intersection satisfies both linear equations.
  CHECK(std::abs(a1 + sol[0].x * b1 + sol[0].y * c1) < 1e-12);
  CHECK(std::abs(a2 + sol[0].x * b2 + sol[0].y * c2) < 1e-12);
}

TEST_CASE("delta dimensions are m1 * m2, delta0 nonsingular") {
  Rng rng(71);
  const BivariatePoly p = random_full(2, rng);
  const BivariatePoly q = random_full(3, rng);
  const RobustResult rp = robust_construct(p, 1e-8, 171);
  const RobustResult rq = robust_construct(q, 1e-8, 172);
  REQUIRE(rp.passed);
  REQUIRE(rq.passed);
  const DeltaOperators d = build_deltas(rp.rep, rq.rep);
  CHECK(d.dim() == 6);
  // Nonsingular for generic square-free inputs and pipeline representations.
  CHECK(Eigen::PartialPivLU<Eigen::MatrixXcd>(d.delta0).rcond() > 1e-12);
}

TEST_CASE("a pure-ansatz pair leaves delta0 structurally singular") {
  Rng rng(173);
  const BivariatePoly p = random_normalized(2, rng);
  const BivariatePoly q = random_normalized(3, rng);
  const DeltaOperators d = build_deltas(construct(p), construct(q));
  // Both C matrices have zero first rows, so row (0,0) of delta0 vanishes.
  CHECK(d.delta0.row(0).norm() == 0.0);
  CHECK_THROWS_AS(solve_mep(d), NumericalError);
}

TEST_CASE("two generic lines intersect as the linear system predicts") {
  const BivariatePoly l1 =
      make_poly(1, {{0, 0, 1}, {1, 0, 2}, {0, 1, -1}});  // 1 + 2x - y
  const BivariatePoly l2 =
      make_poly(1, {{0, 0, -2}, {1, 0, 1}, {0, 1, 1}});  // -2 + x + y
  const RootSet roots = solve_system(l1, l2, 0);
  REQUIRE(roots.count() == 1);
  // 2x - y = -1, x + y = 2  =>  x = 1/3, y = 5/3
  CHECK(std::abs(roots.roots[0].x - Complex(1.0 / 3.0)) < 1e-12);
  CHECK(std::abs(roots.roots[0].y - Complex(5.0 / 3.0)) < 1e-12);
}

TEST_CASE("circle and diagonal line") {
  const BivariatePoly circle =
      make_poly(2, {{2, 0, 1}, {0, 2, 1}, {0, 0, -1}});  // x^2 + y^2 - 1
  const BivariatePoly diag = make_poly(1, {{1, 0, 1}, {0, 1, -1}});  // x - y
  const RootSet roots = solve_system(circle, diag, 1);
  REQUIRE(roots.count() == 2);
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Complex> got;
  for (const SystemRoot& root : roots.roots) {
    got.push_back(root.x);
    CHECK(std::abs(root.x - root.y) < 1e-8);
  }
  CHECK(match_roots(got, {Complex(r), Complex(-r)}) < 1e-8);
}

TEST_CASE("random (3,4) system yields twelve well-resolved roots") {
  Rng rng(72);
  const BivariatePoly p = random_full(3, rng);
  const BivariatePoly q = random_full(4, rng);
  const RootSet roots = solve_system(p, q, 73);
  REQUIRE(roots.count() == 12);
  const double bound_p = 1e-6 * (1.0 + p.max_abs());
  const double bound_q = 1e-6 * (1.0 + q.max_abs());
  for (const SystemRoot& r : roots.roots) {
    CHECK(r.res_p < bound_p);
    CHECK(r.res_q < bound_q);
  }
}

TEST_CASE("eigenvalue-root equivalence via the representation determinants") {
  Rng rng(74);
  const BivariatePoly p = random_full(3, rng);
  const BivariatePoly q = random_full(3, rng);
  const RobustResult rp = robust_construct(p, 1e-8, 75);
  const RobustResult rq = robust_construct(q, 1e-8, 76);
  REQUIRE(rp.passed);
  REQUIRE(rq.passed);
  const std::vector<MepEigenpair> sol =
      solve_mep(build_deltas(rp.rep, rq.rep));
  for (const MepEigenpair& s : sol) {
    // Normalized determinant residual: scale by the Hadamard-style bound
    // of the evaluated pencil.
    const auto scaled_det = [&](const PencilRep& rep) {
      const Eigen::MatrixXcd m = rep.A + s.x * rep.B + s.y * rep.C;
      double scale = 1.0;
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        scale *= m.row(r).norm() + 1e-30;
      }
      return std::abs(Eigen::PartialPivLU<Eigen::MatrixXcd>(m).determinant()) /
             scale;
    };
    CHECK(scaled_det(rp.rep) < 1e-6);
    CHECK(scaled_det(rq.rep) < 1e-6);
  }
}

TEST_CASE("worked degree-5 polynomial against a random cubic") {
  Rng rng(83);
  const BivariatePoly q = random_full(3, rng);
  const RootSet roots = solve_system(example1(), q, 84);
  REQUIRE(roots.count() == 15);
  const double bound_p = 1e-6 * (1.0 + example1().max_abs());
  const double bound_q = 1e-6 * (1.0 + q.max_abs());
  for (const SystemRoot& r : roots.roots) {
    CHECK(r.res_p < bound_p);
    CHECK(r.res_q < bound_q);
  }
}

TEST_CASE("identical polynomials produce a singular problem") {
  Rng rng(77);
  const BivariatePoly p = random_full(3, rng);
  CHECK_THROWS_AS(solve_system(p, p, 0), NumericalError);
}

TEST_CASE("swapping the polynomials permutes the root set") {
  Rng rng(78);
  const BivariatePoly p = random_full(3, rng);
  const BivariatePoly q = random_full(2, rng);
  const RootSet ab = solve_system(p, q, 79);
  const RootSet ba = solve_system(q, p, 80);
  REQUIRE(ab.count() == ba.count());
  std::vector<Complex> xa, xb;
  for (const SystemRoot& r : ab.roots) xa.push_back(r.x);
  for (const SystemRoot& r : ba.roots) xb.push_back(r.x);
  CHECK(match_roots(xa, xb) < 1e-8);
}

TEST_CASE("newton refinement does not hurt the residuals") {
  Rng rng(81);
  const BivariatePoly p = random_full(4, rng);
  const BivariatePoly q = random_full(4, rng);
  const RootSet plain = solve_system(p, q, 82, false);
  const RootSet refined = solve_system(p, q, 82, true);
  REQUIRE(plain.count() == refined.count());
  double before = 0.0, after = 0.0;
  for (const SystemRoot& r : plain.roots) {
    before += std::max(r.res_p, r.res_q);
  }
  for (const SystemRoot& r : refined.roots) {
    after += std::max(r.res_p, r.res_q);
  }
  CHECK(after <= before * 1.5 + 1e-12);
}

TEST_CASE("constant inputs are rejected") {
  const BivariatePoly c = BivariatePoly::constant(2.0);
  const BivariatePoly l = make_poly(1, {{1, 0, 1}});
  CHECK_THROWS_AS(solve_system(c, l, 0), NumericalError);
}
