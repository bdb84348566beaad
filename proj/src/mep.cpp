#include "detrep/mep.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>

namespace detrep {

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
  const Eigen::Index xr = x.rows(), xc = x.cols();
  const Eigen::Index yr = y.rows(), yc = y.cols();
  Eigen::MatrixXcd out(xr * yr, xc * yc);
  for (Eigen::Index i = 0; i < xr; ++i) {
    for (Eigen::Index j = 0; j < xc; ++j) {
      out.block(i * yr, j * yc, yr, yc) = x(i, j) * y;
    }
  }
  return out;
}

}  // namespace

DeltaOperators build_deltas(const PencilRep& rep1, const PencilRep& rep2) {
  DeltaOperators d;
  d.delta0 = kron(rep1.B, rep2.C) - kron(rep1.C, rep2.B);
  d.delta1 = kron(rep1.C, rep2.A) - kron(rep1.A, rep2.C);
  d.delta2 = kron(rep1.A, rep2.B) - kron(rep1.B, rep2.A);
  return d;
}

std::vector<MepEigenpair> solve_mep(const DeltaOperators& deltas) {
  const Eigen::Index n = deltas.dim();
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(deltas.delta0);
  if (!(lu.rcond() > tol::singular)) {
    throw NumericalError(
        ErrorCode::singular_delta0,
        "solve_mep: delta0 is numerically singular; the problem needs the "
        "staircase reduction for singular pencils, which is out of scope");
  }

  if (n == 1) {
    // Closed form: Cramer's rule for the intersection of two linear forms.
    return {{deltas.delta1(0, 0) / deltas.delta0(0, 0),
             deltas.delta2(0, 0) / deltas.delta0(0, 0),
             Eigen::VectorXcd::Ones(1)}};
  }

  const Eigen::MatrixXcd m = lu.solve(deltas.delta1);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, true);
  if (es.info() != Eigen::Success) {
    throw NumericalError(ErrorCode::construction_failed,
                         "solve_mep: eigenvalue iteration failed");
  }

  std::vector<MepEigenpair> pairs;
  pairs.reserve(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    MepEigenpair pr;
    pr.x = es.eigenvalues()(i);
    pr.w = es.eigenvectors().col(i);
    const Eigen::VectorXcd d0w = deltas.delta0 * pr.w;
    const Eigen::VectorXcd d2w = deltas.delta2 * pr.w;
    const Complex denom = pr.w.dot(d0w);
    // The quadratic form w* delta0 w can vanish for non-normal delta0 even
    // at an exact eigenvector; fall back to the least-squares quotient of
    // delta2 w against delta0 w, which agrees in the exact case.
    if (std::abs(denom) > 1e-8 * pr.w.norm() * d0w.norm()) {
      pr.y = pr.w.dot(d2w) / denom;
    } else {
      pr.y = d0w.dot(d2w) / d0w.squaredNorm();
    }
    pairs.push_back(std::move(pr));
  }
  return pairs;
}

namespace {

void newton_step(const BivariatePoly& p, const BivariatePoly& q,
                 const BivariatePoly& px, const BivariatePoly& py,
                 const BivariatePoly& qx, const BivariatePoly& qy, Complex& x,
                 Complex& y) {
  const Complex f = eval(p, x, y);
  const Complex g = eval(q, x, y);
  const Complex a = eval(px, x, y), b = eval(py, x, y);
  const Complex c = eval(qx, x, y), d = eval(qy, x, y);
  const Complex det = a * d - b * c;
  if (std::abs(det) < 1e-14 * (std::abs(a * d) + std::abs(b * c) + 1e-300)) {
    return;  // singular Jacobian, leave the root as computed
  }
  x -= (f * d - b * g) / det;
  y -= (a * g - f * c) / det;
}

}  // namespace

RootSet solve_system(const BivariatePoly& p_in, const BivariatePoly& q_in,
                     std::uint64_t seed, bool refine, double delta) {
  const BivariatePoly p = p_in.trimmed();
  const BivariatePoly q = q_in.trimmed();
  if (p.degree_bound() == 0 || q.degree_bound() == 0) {
    throw NumericalError(ErrorCode::constant_polynomial,
                         "solve_system: both polynomials must be "
                         "non-constant");
  }

  const BivariatePoly px = deriv_x(p), py = deriv_y(p);
  const BivariatePoly qx = deriv_x(q), qy = deriv_y(q);

  // A pair of representations straight from the structured construction has
  // zero first rows in both C matrices, which makes delta0 singular no
  // matter how generic the system is. A change of variables ahead of the
  // construction breaks that structure, so retry through a random unitary
  // substitution when delta0 comes out singular; roots map back through T.
  std::string singular_reason;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    ProjectiveTransform t;
    BivariatePoly pt = p, qt = q;
    if (attempt > 0) {
      Rng rng(sub_seed(seed, 0x7A00 + attempt));
      t = ProjectiveTransform::random(rng);
      pt = apply_transform(p, t);
      qt = apply_transform(q, t);
    }

    const RobustResult rp =
        robust_construct(pt, delta, sub_seed(seed, 11 + 100 * attempt));
    if (!rp.passed) {
      if (attempt > 0) continue;
      throw NumericalError(ErrorCode::construction_failed,
                           "solve_system: first polynomial: " +
                               rp.diagnostic);
    }
    const RobustResult rq =
        robust_construct(qt, delta, sub_seed(seed, 22 + 100 * attempt));
    if (!rq.passed) {
      if (attempt > 0) continue;
      throw NumericalError(ErrorCode::construction_failed,
                           "solve_system: second polynomial: " +
                               rq.diagnostic);
    }

    const DeltaOperators deltas = build_deltas(rp.rep, rq.rep);
    std::vector<MepEigenpair> pairs;
    try {
      pairs = solve_mep(deltas);
    } catch (const NumericalError& e) {
      if (e.code() == ErrorCode::singular_delta0) {
        singular_reason = e.what();
        continue;
      }
      throw;
    }

    RootSet out;
    out.roots.reserve(pairs.size());
    bool mapped_cleanly = true;
    for (const MepEigenpair& pr : pairs) {
      Complex x = pr.x, y = pr.y;
      if (attempt > 0) {
        const Eigen::Vector3cd h = t.T * Eigen::Vector3cd(x, y, Complex(1.0));
        const double scale =
            std::max({std::abs(h(0)), std::abs(h(1)), std::abs(h(2)), 1.0});
        if (std::abs(h(2)) <= 1e-12 * scale) {
          mapped_cleanly = false;  // root sent to the line at infinity
          break;
        }
        x = h(0) / h(2);
        y = h(1) / h(2);
      }
      if (refine) newton_step(p, q, px, py, qx, qy, x, y);
      SystemRoot root;
      root.x = x;
      root.y = y;
      root.res_p = std::abs(eval(p, x, y));
      root.res_q = std::abs(eval(q, x, y));
      out.roots.push_back(root);
    }
    if (!mapped_cleanly) continue;

    std::sort(out.roots.begin(), out.roots.end(),
              [](const SystemRoot& a, const SystemRoot& b) {
                return std::max(a.res_p, a.res_q) <
                       std::max(b.res_p, b.res_q);
              });
    return out;
  }

  throw NumericalError(
      ErrorCode::singular_delta0,
      singular_reason.empty()
          ? "solve_system: the two-parameter problem stayed singular"
          : "solve_system: the two-parameter problem stayed singular across "
            "changes of variables; " +
                singular_reason);
}

}  // namespace detrep
