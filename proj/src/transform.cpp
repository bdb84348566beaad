#include "detrep/transform.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace detrep {

ProjectiveTransform ProjectiveTransform::identity() { return {}; }

ProjectiveTransform ProjectiveTransform::swap_xy() {
  ProjectiveTransform t;
  t.T << 0, 1, 0, 1, 0, 0, 0, 0, 1;
  return t;
}

ProjectiveTransform ProjectiveTransform::shift(Complex s, Complex tt) {
  ProjectiveTransform t;
  t.T(0, 1) = s;
  t.T(0, 2) = tt;
  return t;
}

ProjectiveTransform ProjectiveTransform::random(Rng& rng) {
  // Unitary factor of a complex Gaussian matrix (Haar distributed). Raw
  // Gaussian entries inflate the transformed coefficients by ||T||^n and
  // lose most of the construction's accuracy by degree 10; a unitary change
  // of variables keeps coefficient scales and the pull-back norms intact.
  for (int tries = 0; tries < 64; ++tries) {
    Eigen::Matrix3cd g;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) g(r, c) = rng.complex_gaussian();
    }
    const Eigen::HouseholderQR<Eigen::Matrix3cd> qr(g);
    ProjectiveTransform t;
    t.T = qr.householderQ();
    const Eigen::Matrix3cd r =
        qr.matrixQR().triangularView<Eigen::Upper>();
    bool degenerate = false;
    for (int c = 0; c < 3; ++c) {
      const double mag = std::abs(r(c, c));
      if (mag == 0.0) {
        degenerate = true;
        break;
      }
      t.T.col(c) *= r(c, c) / mag;
    }
    if (degenerate) continue;
    const double cnd = t.cond();
    if (std::isfinite(cnd) && cnd <= tol::transform_cond_max) return t;
  }
  throw NumericalError(ErrorCode::singular_transform,
                       "random transform: rejection sampling stalled");
}

ProjectiveTransform ProjectiveTransform::then(
    const ProjectiveTransform& next) const {
  ProjectiveTransform out;
  out.T = T * next.T;
  return out;
}

ProjectiveTransform ProjectiveTransform::inverse() const {
  if (cond() > 1e14) {
    throw NumericalError(ErrorCode::singular_transform,
                         "projective transform is numerically singular");
  }
  ProjectiveTransform out;
  out.T = T.inverse();
  return out;
}

double ProjectiveTransform::cond() const {
  const Eigen::JacobiSVD<Eigen::Matrix3cd> svd(T);
  const double smin = svd.singularValues()(2);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return svd.singularValues()(0) / smin;
}

bool ProjectiveTransform::is_identity() const {
  return T == Eigen::Matrix3cd::Identity();
}

BivariatePoly apply_transform(const BivariatePoly& p,
                              const ProjectiveTransform& t) {
  if (t.is_identity()) return p;
  if (t.cond() > 1e14) {
    throw NumericalError(ErrorCode::singular_transform,
                         "apply_transform: singular transform");
  }
  const int n = p.degree_bound();

  const auto linear_form = [&](int row) {
    BivariatePoly f(1);
    f.set(1, 0, t.T(row, 0));
    f.set(0, 1, t.T(row, 1));
    f.set(0, 0, t.T(row, 2));
    return f;
  };
  const auto powers = [&](const BivariatePoly& base) {
    std::vector<BivariatePoly> pw(n + 1);
    pw[0] = BivariatePoly::constant(Complex(1.0));
    for (int e = 1; e <= n; ++e) pw[e] = poly_mul(pw[e - 1], base);
    return pw;
  };
  const std::vector<BivariatePoly> px = powers(linear_form(0));
  const std::vector<BivariatePoly> py = powers(linear_form(1));
  const std::vector<BivariatePoly> pz = powers(linear_form(2));

  BivariatePoly out(n);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n - i; ++j) {
      const Complex c = p.coeff(i, j);
      if (c == Complex(0.0)) continue;
      const BivariatePoly term =
          poly_mul(poly_mul(px[i], py[j]), pz[n - i - j]);
      out = poly_add(out, poly_scale(term, c));
    }
  }
  // poly_add of bound-n inputs keeps the bound at n.
  return out;
}

bool is_normal(const BivariatePoly& p_in) {
  const BivariatePoly p = p_in.trimmed();
  const int n = p.degree_bound();
  if (n == 0) return false;
  if (n == 1) return true;  // the 1x1 construction has no conditions
  const double scale = p.max_abs();
  if (std::abs(p.coeff(n, 0)) <= tol::lead * scale) return false;
  if (std::abs(p.coeff(0, n)) > tol::tail_zero * scale) return false;
  if (std::abs(p.coeff(0, n - 1)) > tol::tail_zero * scale) return false;

  std::vector<Complex> xi;
  try {
    xi = univariate_roots(reduced_boundary(p));
  } catch (const NumericalError&) {
    return false;
  }
  order_roots(xi);
  if (!roots_simple(xi)) return false;
  double xi_max = 0.0;
  for (const Complex& r : xi) xi_max = std::max(xi_max, std::abs(r));
  for (int i = 0; i + 1 < n - 1; ++i) {
    if (std::abs(xi[i]) <= tol::zero_root * xi_max) return false;
  }
  return true;
}

NormalizationRecord shift_substitution(const BivariatePoly& p_in) {
  const BivariatePoly p = p_in.trimmed();
  const int n = p.degree_bound();
  if (n == 0) {
    throw NumericalError(ErrorCode::constant_polynomial,
                         "shift_substitution: constant polynomial");
  }
  const double scale = p.max_abs();
  if (std::abs(p.coeff(n, 0)) <= tol::lead * scale) {
    throw NumericalError(ErrorCode::leading_coefficient_zero,
                         "shift_substitution: p_n0 vanishes");
  }

  // Nothing to do when the two trailing coefficients already vanish.
  if (std::abs(p.coeff(0, n)) <= tol::tail_zero * scale &&
      std::abs(p.coeff(0, n - 1)) <= tol::tail_zero * scale) {
    NormalizationRecord rec;
    rec.normalized = p;
    rec.normalized.set(0, n, Complex(0.0));
    rec.normalized.set(0, n - 1, Complex(0.0));
    return rec;
  }

  const UnivariatePoly h = boundary_univariate(p);
  const std::vector<Complex> roots = univariate_roots(h);
  if (!roots_simple(roots)) {
    throw NumericalError(ErrorCode::multiple_boundary_root,
                         "shift_substitution: boundary polynomial has a "
                         "multiple root; apply a random transform first");
  }

  // Pick the shift root. The shifted boundary roots become zeta_i - s and
  // the construction's coefficient growth goes like prod (1 + |zeta_i - s|),
  // so minimize that product over the candidates whose |h'(s)| is not much
  // worse than the best (t stays well conditioned).
  const UnivariatePoly hp = h.derivative();
  double best_deriv = 0.0;
  for (const Complex& r : roots) {
    best_deriv = std::max(best_deriv, std::abs(hp.eval(r)));
  }
  if (best_deriv <= 0.0) {
    throw NumericalError(ErrorCode::multiple_boundary_root,
                         "shift_substitution: h'(s) vanishes at every root");
  }
  Complex s = roots.front();
  double best_growth = std::numeric_limits<double>::infinity();
  for (const Complex& r : roots) {
    if (std::abs(hp.eval(r)) < 1e-2 * best_deriv) continue;
    double growth = 1.0;
    for (const Complex& other : roots) {
      if (&other == &r) continue;
      growth *= 1.0 + std::abs(other - r);
    }
    if (growth < best_growth) {
      best_growth = growth;
      s = r;
    }
  }

  // t = -(p_{n-1,0} s^{n-1} + ... + p_{0,n-1}) / h'(s)
  Complex num(0.0);
  for (int idx = 0; idx <= n - 1; ++idx) {
    num = num * s + p.coeff(n - 1 - idx, idx);
  }
  const Complex t = -num / hp.eval(s);

  NormalizationRecord rec;
  rec.shift_s = s;
  rec.shift_t = t;
  rec.transform = ProjectiveTransform::shift(s, t);
  rec.normalized = apply_transform(p, rec.transform);

  const double out_scale = rec.normalized.max_abs();
  if (std::abs(rec.normalized.coeff(0, n)) > tol::tail_zero * out_scale ||
      std::abs(rec.normalized.coeff(0, n - 1)) > tol::tail_zero * out_scale) {
    throw NumericalError(ErrorCode::construction_failed,
                         "shift_substitution: trailing coefficients did not "
                         "cancel numerically");
  }
  rec.normalized.set(0, n, Complex(0.0));
  rec.normalized.set(0, n - 1, Complex(0.0));
  return rec;
}

NormalizationRecord normalize(const BivariatePoly& p_in, std::uint64_t seed) {
  const BivariatePoly p = p_in.trimmed();
  const int n = p.degree_bound();
  if (n == 0) {
    throw NumericalError(ErrorCode::constant_polynomial,
                         "normalize: constant polynomial");
  }

  if (n == 1) {
    NormalizationRecord rec;
    rec.normalized = p;  // the 1x1 construction has no conditions
    return rec;
  }
  if (is_normal(p)) {
    NormalizationRecord rec;
    rec.normalized = p;
    rec.normalized.set(0, n, Complex(0.0));
    rec.normalized.set(0, n - 1, Complex(0.0));
    return rec;
  }

  Rng rng(sub_seed(seed, 0xA11CEULL));
  for (int attempt = 0; attempt < kMaxNormalizeAttempts; ++attempt) {
    const ProjectiveTransform t = attempt == 0
                                      ? ProjectiveTransform::identity()
                                      : ProjectiveTransform::random(rng);
    const BivariatePoly p1 = attempt == 0 ? p : apply_transform(p, t);
    if (p1.true_degree() < n) continue;  // leading form annihilated
    const double scale = p1.max_abs();
    if (std::abs(p1.coeff(n, 0)) <= tol::lead * scale) continue;

    std::vector<Complex> hroots;
    try {
      hroots = univariate_roots(boundary_univariate(p1));
    } catch (const NumericalError&) {
      continue;
    }
    if (!roots_simple(hroots)) continue;

    NormalizationRecord rec;
    try {
      rec = shift_substitution(p1);
    } catch (const NumericalError&) {
      continue;
    }
    const BivariatePoly& p2 = rec.normalized;
    if (std::abs(p2.coeff(n, 0)) <= tol::lead * p2.max_abs()) continue;

    rec.transform = t.then(rec.transform);

    if (n >= 2) {
      std::vector<Complex> xi;
      try {
        xi = univariate_roots(reduced_boundary(rec.normalized));
      } catch (const NumericalError&) {
        continue;
      }
      order_roots(xi);
      if (!roots_simple(xi)) continue;
      double xi_max = 0.0;
      for (const Complex& r : xi) xi_max = std::max(xi_max, std::abs(r));
      bool zero_misplaced = false;
      for (int i = 0; i + 1 < n - 1; ++i) {
        if (std::abs(xi[i]) <= tol::zero_root * xi_max) zero_misplaced = true;
      }
      if (zero_misplaced) continue;

      // Coefficient growth in the construction goes like the product of
      // (1 + |xi_i|); when the roots sit far from unit size, rescale y by a
      // power of two that brings their geometric mean back to one. Powers
      // of two keep the coefficient scaling exact.
      double log_gm = 0.0;
      int nonzero = 0;
      for (const Complex& r : xi) {
        const double a = std::abs(r);
        if (a > tol::zero_root * xi_max) {
          log_gm += std::log2(a);
          ++nonzero;
        }
      }
      if (nonzero > 0) {
        const int e = static_cast<int>(std::lround(log_gm / nonzero));
        if (e != 0) {
          const double lambda = std::ldexp(1.0, -e);  // new roots: xi * lambda
          ProjectiveTransform scale;
          scale.T(1, 1) = lambda;
          const BivariatePoly p3 = apply_transform(rec.normalized, scale);
          std::vector<Complex> xi3;
          try {
            xi3 = univariate_roots(reduced_boundary(p3));
          } catch (const NumericalError&) {
            continue;
          }
          order_roots(xi3);
          if (roots_simple(xi3)) {
            rec.normalized = p3;
            rec.normalized.set(0, n, Complex(0.0));
            rec.normalized.set(0, n - 1, Complex(0.0));
            rec.transform = rec.transform.then(scale);
          }
        }
      }
    }

    return rec;
  }

  throw NumericalError(
      ErrorCode::likely_non_square_free,
      "normalize: boundary roots stayed non-simple after random changes of "
      "variables; the polynomial is likely not square-free");
}

PencilRep pull_back(const PencilRep& rep, const ProjectiveTransform& t) {
  if (t.is_identity()) return rep;
  const Eigen::Matrix3cd s = t.inverse().T;
  PencilRep out;
  out.B = s(0, 0) * rep.B + s(1, 0) * rep.C + s(2, 0) * rep.A;
  out.C = s(0, 1) * rep.B + s(1, 1) * rep.C + s(2, 1) * rep.A;
  out.A = s(0, 2) * rep.B + s(1, 2) * rep.C + s(2, 2) * rep.A;
  return out;
}

}  // namespace detrep
