#pragma once

#include <Eigen/Dense>

#include "detrep/types.hpp"

namespace detrep {

/// Matrix triple with det(A + x B + y C) representing a bivariate polynomial.
struct PencilRep {
  Eigen::MatrixXcd A, B, C;

  Eigen::Index order() const { return A.rows(); }

  /// det(A + x B + y C) via LU with partial pivoting.
  Complex det_at(Complex x, Complex y) const;

  /// max of the infinity norms of A, B and C.
  double max_inf_norm() const;
};

/// Diagonal equivalence D1 (A + xB + yC) D2 with power-of-two entries and
/// det(D1) det(D2) = 1, driving the row and column maxima of
/// max(|A|, |B|, |C|) towards one. The determinant is preserved exactly and
/// the matrix norms typically drop by orders of magnitude.
PencilRep balance_pencil(const PencilRep& rep);

}  // namespace detrep
