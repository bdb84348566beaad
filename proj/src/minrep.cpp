#include "detrep/minrep.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace detrep {

Complex compute_alpha(Complex h_lead, int n, int k) {
  return h_lead - Complex(static_cast<double>(n - k - 1));
}

UnivariatePoly build_g(const UnivariatePoly& h, std::span<const Complex> xi,
                       Complex alpha_nk, int n, int k) {
  const int deg = n - k;
  if (h.degree() > deg) {
    throw NumericalError(ErrorCode::invalid_argument,
                         "build_g: deg(h) exceeds n-k");
  }
  // Accumulate with a fixed formal degree n-k, highest power first.
  std::vector<Complex> acc(deg + 1, Complex(0.0));
  for (int idx = 0; idx <= h.degree(); ++idx) {
    acc[deg - h.degree() + idx] = h.coeffs()[idx];
  }

  std::vector<Complex> sub;
  const auto subtract_t_times = [&](const UnivariatePoly& prod, Complex w) {
    // prod has degree n-k-1; t * prod occupies exactly acc[0..deg-1].
    for (int idx = 0; idx <= prod.degree(); ++idx) {
      acc[idx] -= w * prod.coeffs()[idx];
    }
  };

  for (int l = k; l <= n - 2; ++l) {
    sub.clear();
    for (int i = 1; i <= l - k; ++i) sub.push_back(xi[i - 1]);
    for (int j = l + 1; j <= n - 1; ++j) sub.push_back(xi[j - 1]);
    subtract_t_times(UnivariatePoly::from_roots(sub), Complex(1.0));
  }
  sub.clear();
  for (int i = 1; i <= n - k - 1; ++i) sub.push_back(xi[i - 1]);
  subtract_t_times(UnivariatePoly::from_roots(sub), alpha_nk);

  if (std::abs(acc[0]) > tol::g_top * h.max_abs()) {
    throw NumericalError(ErrorCode::construction_failed,
                         "build_g: degree-(n-k) coefficient did not cancel");
  }
  return UnivariatePoly(std::vector<Complex>(acc.begin() + 1, acc.end()));
}

Eigen::MatrixXcd beta_system_matrix(std::span<const Complex> xi, int n,
                                    int k) {
  const int m = n - k;
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(m, m);
  for (int row = 1; row <= m; ++row) {
    for (int col = 1; col <= row; ++col) {
      Complex prod(1.0);
      for (int i = 1; i <= col - 1; ++i) prod *= xi[row - 1] - xi[i - 1];
      for (int j = col + k; j <= n - 1; ++j) prod *= xi[row - 1] - xi[j - 1];
      w(row - 1, col - 1) = prod;
    }
  }
  return w;
}

namespace {

std::vector<Complex> solve_beta_system(std::span<const Complex> rhs,
                                       std::span<const Complex> xi, int n,
                                       int k, double* cond_estimate) {
  const int m = n - k;
  const Eigen::MatrixXcd w = beta_system_matrix(xi, n, k);
  const double max_w = w.cwiseAbs().maxCoeff();
  for (int d = 0; d < m; ++d) {
    if (std::abs(w(d, d)) <= tol::w_diag * max_w) {
      throw NumericalError(ErrorCode::ill_conditioned_beta_system,
                           "solve_beta: vanishing pivot, roots too close");
    }
  }

  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(w);
  const double smin = svd.singularValues()(m - 1);
  const double cond = smin > 0.0
                          ? svd.singularValues()(0) / smin
                          : std::numeric_limits<double>::infinity();
  if (cond_estimate != nullptr) *cond_estimate = cond;
  if (cond > tol::w_cond_max) {
    throw NumericalError(ErrorCode::ill_conditioned_beta_system,
                         "solve_beta: beta system condition estimate above "
                         "1e10, renormalize");
  }

  std::vector<Complex> beta(m);
  for (int row = 0; row < m; ++row) {
    Complex acc = rhs[row];
    for (int col = 0; col < row; ++col) acc -= w(row, col) * beta[col];
    beta[row] = acc / w(row, row);
  }
  return beta;
}

}  // namespace

std::vector<Complex> solve_beta(const UnivariatePoly& g,
                                std::span<const Complex> xi, int n, int k,
                                double* cond_estimate) {
  std::vector<Complex> rhs(n - k);
  for (int m = 0; m < n - k; ++m) rhs[m] = g.eval(xi[m]);
  return solve_beta_system(rhs, xi, n, k, cond_estimate);
}

Complex compute_gamma(Complex s_coeff, std::span<const Complex> xi, int n,
                      int k) {
  const int m = n - k;
  Complex prod(1.0);
  for (int i = 0; i < m; ++i) {
    if (xi[i] == Complex(0.0)) {
      throw NumericalError(ErrorCode::zero_root_misplaced,
                           "compute_gamma: zero root inside the product");
    }
    prod *= xi[i];
  }
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * s_coeff / prod;
}

std::vector<BivariatePoly> update_q(const CoefficientFrame& frame, int k,
                                    std::vector<BivariatePoly> q) {
  const int n = frame.n;
  q[k] = poly_add(q[k],
                  poly_mul_linear(q[0], Complex(1.0), frame.beta_at(k, k)));
  for (int j = k + 1; j <= n - 2; ++j) {
    BivariatePoly next = poly_mul_linear(q[j - 1], Complex(1.0), -frame.xi[j - 1]);
    for (int l = 2; l <= k; ++l) {
      next = poly_add(next,
                      poly_mul_linear(q[j - l], Complex(1.0), frame.beta_at(j, l)));
    }
    q[j] = std::move(next);
  }
  BivariatePoly last = poly_mul_linear(q[n - 2], Complex(1.0), -frame.xi[n - 2]);
  for (int l = 2; l <= k; ++l) {
    last = poly_add(last, poly_mul_linear(q[n - 1 - l], frame.alpha(n - 1, l),
                                          frame.beta_at(n - 1, l)));
  }
  q[n - 1] = std::move(last);
  return q;
}

PencilRep assemble(const CoefficientFrame& frame,
                   const BivariatePoly& final_residual, Complex p_n0,
                   double scale) {
  const int n = frame.n;
  for (int i = 0; i <= final_residual.degree_bound(); ++i) {
    for (int j = 0; j <= final_residual.degree_bound() - i; ++j) {
      if ((i == 0 && j == 0) || (i == 1 && j == 0)) continue;
      if (std::abs(final_residual.coeff(i, j)) > tol::residual_tail * scale) {
        throw NumericalError(ErrorCode::residual_not_linear,
                             "assemble: final residual is not of the form "
                             "r00 + r10 x");
      }
    }
  }

  PencilRep rep;
  rep.A = Eigen::MatrixXcd::Identity(n, n);
  rep.B = Eigen::MatrixXcd::Zero(n, n);
  rep.C = Eigen::MatrixXcd::Zero(n, n);

  rep.A(0, 0) = final_residual.coeff(0, 0);
  for (int j = 1; j <= n - 2; ++j) rep.A(0, j) = frame.gamma[j];
  if (n >= 2) rep.A(0, n - 1) = Complex(0.0);

  rep.B(0, 0) = final_residual.degree_bound() >= 1
                    ? final_residual.coeff(1, 0)
                    : Complex(0.0);
  rep.B(0, n - 1) = p_n0;
  for (int i = 1; i <= n - 1; ++i) {
    for (int c = 0; c < i; ++c) {
      rep.B(i, c) = -frame.alpha(i, i - c);
      rep.C(i, c) = -frame.beta_at(i, i - c);
    }
  }
  return rep;
}

namespace {

// The construction itself runs in extended precision. Coefficients of the
// intermediate q polynomials grow like the product of (1 + |xi_i|), and the
// error committed at that scale is what limits the quality score around
// degree 10 when everything is done in double.
using LD = std::complex<long double>;

struct TriPoly {
  int n = 0;
  std::vector<LD> c;

  TriPoly() : c(1) {}
  explicit TriPoly(int bound)
      : n(bound),
        c(static_cast<std::size_t>(bound + 1) * (bound + 2) / 2) {}

  std::size_t idx(int i, int j) const {
    const std::size_t row = static_cast<std::size_t>(i);
    return row * (n + 1) - row * (row - 1) / 2 + j;
  }
  LD at(int i, int j) const { return c[idx(i, j)]; }
  void add(int i, int j, LD v) { c[idx(i, j)] += v; }
};

TriPoly to_tri(const BivariatePoly& p) {
  TriPoly out(p.degree_bound());
  for (int i = 0; i <= p.degree_bound(); ++i) {
    for (int j = 0; j <= p.degree_bound() - i; ++j) {
      out.c[out.idx(i, j)] = LD(p.coeff(i, j));
    }
  }
  return out;
}

BivariatePoly to_double(const TriPoly& p) {
  BivariatePoly out(p.n);
  for (int i = 0; i <= p.n; ++i) {
    for (int j = 0; j <= p.n - i; ++j) {
      const LD v = p.at(i, j);
      out.set(i, j, Complex(static_cast<double>(v.real()),
                            static_cast<double>(v.imag())));
    }
  }
  return out;
}

Complex to_complex(LD v) {
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

// The pencil entries are doubles, so every chosen parameter is rounded to
// double right away and the rounded value is what the rest of the
// computation sees; later parameters then compensate the quantization of
// earlier ones.
LD snap(LD v) { return LD(to_complex(v)); }

// (a x + b y) * p with the bound raised by one.
TriPoly mul_linear(const TriPoly& p, LD a, LD b) {
  TriPoly out(p.n + 1);
  for (int i = 0; i <= p.n; ++i) {
    for (int j = 0; j <= p.n - i; ++j) {
      const LD v = p.at(i, j);
      if (v == LD(0.0)) continue;
      out.add(i + 1, j, a * v);
      out.add(i, j + 1, b * v);
    }
  }
  return out;
}

// dst += w * src; src bound must not exceed dst bound.
void add_scaled(TriPoly& dst, const TriPoly& src, LD w) {
  for (int i = 0; i <= src.n; ++i) {
    for (int j = 0; j <= src.n - i; ++j) dst.add(i, j, w * src.at(i, j));
  }
}

// p - p_n0 x q_{n-1} - sum_{l=2}^{gamma_upto} gamma_{n-l} q_{n-l}
TriPoly residual_from(const TriPoly& p, const std::vector<TriPoly>& q,
                      std::span<const LD> gamma, LD p_n0, int gamma_upto) {
  const int n = p.n;
  TriPoly s = p;
  add_scaled(s, mul_linear(q[n - 1], -p_n0, LD(0.0)), LD(1.0));
  for (int l = 2; l <= gamma_upto; ++l) {
    add_scaled(s, q[n - l], -gamma[n - l]);
  }
  return s;
}

LD eval_poly_hi_first(std::span<const LD> coeffs, LD t) {
  LD acc(0.0);
  for (const LD& v : coeffs) acc = acc * t + v;
  return acc;
}

// One or two Newton corrections of a simple root against the reduced
// boundary, evaluated in extended precision. Exact zero roots stay put.
LD polish_root(std::span<const LD> v, std::span<const LD> vd, LD z) {
  for (int it = 0; it < 2; ++it) {
    const LD f = eval_poly_hi_first(v, z);
    const LD d = eval_poly_hi_first(vd, z);
    if (d == LD(0.0)) break;
    z -= f / d;
  }
  return z;
}

// g(xi_m) from the defining expression, in extended precision.
LD g_value_ld(std::span<const LD> h, std::span<const LD> xi, LD alpha_nk,
              int n, int k, LD t) {
  LD acc = eval_poly_hi_first(h, t);
  for (int l = k; l <= n - 2; ++l) {
    LD prod = t;
    for (int i = 1; i <= l - k; ++i) prod *= t - xi[i - 1];
    for (int j = l + 1; j <= n - 1; ++j) prod *= t - xi[j - 1];
    acc -= prod;
  }
  LD prod = alpha_nk * t;
  for (int i = 1; i <= n - k - 1; ++i) prod *= t - xi[i - 1];
  return acc - prod;
}

}  // namespace

ConstructionResult construct_detailed(const BivariatePoly& p_in) {
  const BivariatePoly p = p_in.trimmed();
  const int n = p.degree_bound();
  if (n == 0) {
    throw NumericalError(ErrorCode::constant_polynomial,
                         "construct: constant polynomial");
  }

  ConstructionResult out;
  out.frame.n = n;

  if (n == 1) {
    out.rep.A = Eigen::MatrixXcd::Constant(1, 1, p.coeff(0, 0));
    out.rep.B = Eigen::MatrixXcd::Constant(1, 1, p.coeff(1, 0));
    out.rep.C = Eigen::MatrixXcd::Constant(1, 1, p.coeff(0, 1));
    out.first_residual = p;
    out.final_residual = p;
    return out;
  }

  const double scale = p.max_abs();
  const Complex p_n0 = p.coeff(n, 0);
  if (std::abs(p_n0) <= tol::lead * scale) {
    throw NumericalError(ErrorCode::leading_coefficient_zero,
                         "construct: condition (a) fails, p_n0 ~ 0");
  }
  if (std::abs(p.coeff(0, n)) > tol::tail_zero * scale ||
      std::abs(p.coeff(0, n - 1)) > tol::tail_zero * scale) {
    throw NumericalError(ErrorCode::tail_not_zero,
                         "construct: condition (c) fails, p_0n or p_{0,n-1} "
                         "is not zero");
  }

  std::vector<Complex> xi = univariate_roots(reduced_boundary(p));
  order_roots(xi);
  if (!roots_simple(xi)) {
    throw NumericalError(ErrorCode::roots_not_simple,
                         "construct: roots of the reduced boundary are not "
                         "simple");
  }
  double xi_max = 0.0;
  for (const Complex& r : xi) xi_max = std::max(xi_max, std::abs(r));
  for (int i = 0; i + 1 < n - 1; ++i) {
    if (std::abs(xi[i]) <= tol::zero_root * xi_max) {
      throw NumericalError(ErrorCode::zero_root_misplaced,
                           "construct: more than one zero root of the "
                           "reduced boundary");
    }
  }

  // Polish the roots against the reduced boundary in extended precision;
  // the degree-n part of the representation is exactly
  // p_n0 x prod (x - xi_i y), so root accuracy caps everything downstream.
  const UnivariatePoly v_poly = reduced_boundary(p);
  std::vector<LD> v_ld(v_poly.coeffs().begin(), v_poly.coeffs().end());
  std::vector<LD> vd_ld(v_ld.size() - 1);
  for (std::size_t i = 0; i + 1 < v_ld.size(); ++i) {
    vd_ld[i] = v_ld[i] * LD(static_cast<long double>(v_ld.size() - 1 - i));
  }
  std::vector<LD> xi_ld(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    xi_ld[i] = std::abs(xi[i]) <= tol::zero_root * xi_max
                   ? LD(0.0)
                   : snap(polish_root(v_ld, vd_ld, LD(xi[i])));
    xi[i] = to_complex(xi_ld[i]);
  }

  CoefficientFrame& frame = out.frame;
  frame.xi = xi;
  frame.alpha_last.assign(n, Complex(1.0));
  frame.beta.assign(n, {});
  for (int i = 1; i <= n - 1; ++i) {
    frame.beta[i].assign(i + 1, Complex(0.0));
    frame.beta[i][1] = -xi[i - 1];
  }
  frame.gamma.assign(std::max(n - 1, 1), Complex(0.0));

  const TriPoly p_ld = to_tri(p);
  const LD lead(p_n0);
  std::vector<LD> gamma_ld(std::max(n - 1, 1), LD(0.0));

  // Pre-loop: q_j = (x - xi_j y) q_{j-1} and the first residual.
  std::vector<TriPoly> q(n);
  q[0] = TriPoly(0);
  q[0].c[0] = LD(1.0);
  for (int j = 1; j <= n - 1; ++j) {
    q[j] = mul_linear(q[j - 1], LD(1.0), -xi_ld[j - 1]);
  }
  TriPoly r = p_ld;
  add_scaled(r, mul_linear(q[n - 1], -lead, LD(0.0)), LD(1.0));
  out.first_residual = to_double(r);

  for (int k = 2; k <= n - 1; ++k) {
    StepTrace step;
    step.k = k;

    // h_{n-k}(t, 1): the degree-(n-k+1) slice of r divided by p_n0 x.
    std::vector<LD> h_ld(n - k + 1);
    std::vector<Complex> hc(n - k + 1);
    for (int idx = 0; idx <= n - k; ++idx) {
      h_ld[idx] = r.at(n - k + 1 - idx, idx) / lead;
      hc[idx] = to_complex(h_ld[idx]);
    }
    step.h = UnivariatePoly(std::move(hc));

    const LD alpha_ld =
        snap(h_ld.front() - LD(static_cast<long double>(n - k - 1)));
    step.alpha_nk = to_complex(alpha_ld);
    frame.alpha_last[k] = step.alpha_nk;

    step.g = build_g(step.h, xi, step.alpha_nk, n, k);

    // Beta system: W entries and right side evaluated at the roots, forward
    // substitution in extended precision. The condition gate stays.
    {
      const int m = n - k;
      Eigen::MatrixXcd w_dbl(m, m);
      std::vector<std::vector<LD>> w(m, std::vector<LD>(m, LD(0.0)));
      for (int row = 1; row <= m; ++row) {
        for (int col = 1; col <= row; ++col) {
          LD prod(1.0);
          for (int i = 1; i <= col - 1; ++i) {
            prod *= xi_ld[row - 1] - xi_ld[i - 1];
          }
          for (int j = col + k; j <= n - 1; ++j) {
            prod *= xi_ld[row - 1] - xi_ld[j - 1];
          }
          w[row - 1][col - 1] = prod;
        }
      }
      for (int row = 0; row < m; ++row) {
        for (int col = 0; col < m; ++col) {
          w_dbl(row, col) = to_complex(w[row][col]);
        }
      }
      const double max_w = w_dbl.cwiseAbs().maxCoeff();
      for (int d = 0; d < m; ++d) {
        if (std::abs(w_dbl(d, d)) <= tol::w_diag * max_w) {
          throw NumericalError(ErrorCode::ill_conditioned_beta_system,
                               "construct: vanishing pivot in the beta "
                               "system, roots too close");
        }
      }
      const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(w_dbl);
      const double smin = svd.singularValues()(m - 1);
      step.w_cond = smin > 0.0
                        ? svd.singularValues()(0) / smin
                        : std::numeric_limits<double>::infinity();
      if (step.w_cond > tol::w_cond_max) {
        throw NumericalError(ErrorCode::ill_conditioned_beta_system,
                             "construct: beta system condition estimate "
                             "above 1e10, renormalize");
      }

      std::vector<LD> beta_ld(m);
      step.beta_col.resize(m);
      for (int row = 0; row < m; ++row) {
        LD acc = g_value_ld(h_ld, xi_ld, alpha_ld, n, k, xi_ld[row]);
        for (int col = 0; col < row; ++col) {
          acc -= w[row][col] * beta_ld[col];
        }
        beta_ld[row] = snap(acc / w[row][row]);
        step.beta_col[row] = to_complex(beta_ld[row]);
        frame.beta[k + row][k] = step.beta_col[row];
      }

      // Lines 14-17 of the construction: refresh q_k, ..., q_{n-1} with
      // column k. q_k only gains its new (x + beta_kk y) q_0 term; the
      // higher ones are rebuilt from the recursion.
      add_scaled(q[k], mul_linear(q[0], LD(1.0), beta_ld[0]), LD(1.0));
      for (int j = k + 1; j <= n - 2; ++j) {
        TriPoly next = mul_linear(q[j - 1], LD(1.0), -xi_ld[j - 1]);
        for (int l = 2; l <= k; ++l) {
          add_scaled(next,
                     mul_linear(q[j - l], LD(1.0), LD(frame.beta_at(j, l))),
                     LD(1.0));
        }
        q[j] = std::move(next);
      }
      TriPoly last = mul_linear(q[n - 2], LD(1.0), -xi_ld[n - 2]);
      for (int l = 2; l <= k; ++l) {
        add_scaled(last,
                   mul_linear(q[n - 1 - l], LD(frame.alpha(n - 1, l)),
                              LD(frame.beta_at(n - 1, l))),
                   LD(1.0));
      }
      q[n - 1] = std::move(last);
    }

    TriPoly s = residual_from(p_ld, q, gamma_ld, lead, k - 1);
    const LD s_top = s.at(0, n - k);
    step.s_top = to_complex(s_top);

    LD prod(1.0);
    for (int i = 0; i < n - k; ++i) {
      if (xi_ld[i] == LD(0.0)) {
        throw NumericalError(ErrorCode::zero_root_misplaced,
                             "construct: zero root inside the gamma product");
      }
      prod *= xi_ld[i];
    }
    LD gamma = snap(((n - k) % 2 == 0 ? LD(1.0) : LD(-1.0)) * s_top / prod);

    r = s;
    add_scaled(r, q[n - k], -gamma);
    double ann = static_cast<double>(std::abs(r.at(0, n - k)));
    if (ann > tol::annihilation * scale) {
      // The annihilation postcondition is the ground truth for the sign.
      TriPoly r2 = s;
      add_scaled(r2, q[n - k], gamma);
      const double ann2 = static_cast<double>(std::abs(r2.at(0, n - k)));
      if (ann2 <= tol::annihilation * scale) {
        gamma = -gamma;
        r = std::move(r2);
        ann = ann2;
      } else {
        throw NumericalError(ErrorCode::annihilation_failed,
                             "construct: gamma step failed to annihilate the "
                             "pure-y coefficient");
      }
    }
    gamma_ld[n - k] = gamma;
    frame.gamma[n - k] = to_complex(gamma);

    step.gamma = frame.gamma[n - k];
    step.s_poly = to_double(s);
    step.r_poly = to_double(r);
    step.annihilation_residual = ann;
    out.steps.push_back(std::move(step));
  }

  const BivariatePoly r_dbl = to_double(r);
  frame.gamma00 = r_dbl.coeff(0, 0);
  frame.gamma10 = r_dbl.coeff(1, 0);
  out.final_residual = r_dbl;
  out.rep = assemble(frame, r_dbl, p_n0, scale);
  return out;
}

PencilRep construct(const BivariatePoly& p) {
  return construct_detailed(p).rep;
}

}  // namespace detrep
