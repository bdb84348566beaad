#pragma once

#include <span>
#include <vector>

#include "detrep/pencil.hpp"
#include "detrep/poly.hpp"

namespace detrep {

/// Coefficients of the structured pencil: linear forms f_ij = alpha_ij x +
/// beta_ij y on the lower band, gamma entries in the first row. alpha_ij is
/// one except in the last band row, where it is computed column by column.
struct CoefficientFrame {
  int n = 0;
  std::vector<Complex> xi;                 // roots of the reduced boundary
  std::vector<Complex> alpha_last;         // alpha_{n-1,k}, indexed by k
  std::vector<std::vector<Complex>> beta;  // beta[i][l], 1 <= l <= i <= n-1
  std::vector<Complex> gamma;              // gamma[j], 1 <= j <= n-2
  Complex gamma00{0.0};
  Complex gamma10{0.0};

  Complex alpha(int i, int l) const {
    if (l == 1 || i < n - 1) return Complex(1.0);
    return alpha_last[l];
  }
  Complex beta_at(int i, int l) const { return beta[i][l]; }
};

/// Per-iteration record of the construction, kept for diagnostics and tests.
struct StepTrace {
  int k = 0;
  UnivariatePoly h;
  Complex alpha_nk{0.0};
  UnivariatePoly g;
  std::vector<Complex> beta_col;  // beta_{kk}, ..., beta_{n-1,k}
  double w_cond = 0.0;
  Complex s_top{0.0};  // coefficient of y^{n-k} in the intermediate residual
  Complex gamma{0.0};
  BivariatePoly s_poly;
  BivariatePoly r_poly;
  double annihilation_residual = 0.0;
};

struct ConstructionResult {
  PencilRep rep;
  CoefficientFrame frame;
  BivariatePoly first_residual;  // residual after the pre-loop subtraction
  BivariatePoly final_residual;  // r00 + r10 x
  std::vector<StepTrace> steps;
};

/// alpha_{n-1,k} from the leading coefficient of h_{n-k}.
Complex compute_alpha(Complex h_lead, int n, int k);

/// g(t) = h(t) minus the t-weighted products fixed by earlier columns; the
/// degree-(n-k) terms cancel by the choice of alpha.
UnivariatePoly build_g(const UnivariatePoly& h, std::span<const Complex> xi,
                       Complex alpha_nk, int n, int k);

/// Lower triangular matrix of the beta system, entries w_l(xi_m).
Eigen::MatrixXcd beta_system_matrix(std::span<const Complex> xi, int n, int k);

/// Solves the banded lower triangular system for beta_{kk}, ..., beta_{n-1,k}
/// by forward substitution.
std::vector<Complex> solve_beta(const UnivariatePoly& g,
                                std::span<const Complex> xi, int n, int k,
                                double* cond_estimate = nullptr);

/// gamma_{n-k} = (-1)^{n-k} s_coeff / (xi_1 ... xi_{n-k}).
Complex compute_gamma(Complex s_coeff, std::span<const Complex> xi, int n,
                      int k);

/// Recomputes q_j for j >= k once column k of the frame is fixed; q_j for
/// j < k is left untouched.
std::vector<BivariatePoly> update_q(const CoefficientFrame& frame, int k,
                                    std::vector<BivariatePoly> q);

/// Fills A, B, C from the frame and the final residual r00 + r10 x. scale is
/// the coefficient magnitude of the represented polynomial, used to check
/// that nothing beyond r00 + r10 x survived.
PencilRep assemble(const CoefficientFrame& frame,
                   const BivariatePoly& final_residual, Complex p_n0,
                   double scale);

/// Order-n representation of a polynomial satisfying the normalized-form
/// conditions: p_n0 != 0, p_0n = p_{0,n-1} = 0, and simple roots of the
/// reduced boundary with at most one zero root ordered last.
ConstructionResult construct_detailed(const BivariatePoly& p);
PencilRep construct(const BivariatePoly& p);

}  // namespace detrep
