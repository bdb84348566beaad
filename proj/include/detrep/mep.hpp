#pragma once

#include <vector>

#include "detrep/verify.hpp"

namespace detrep {

/// Operator determinants of the two-parameter eigenvalue problem on the
/// tensor-product space, dimension m1 * m2.
struct DeltaOperators {
  Eigen::MatrixXcd delta0, delta1, delta2;
  Eigen::Index dim() const { return delta0.rows(); }
};

/// delta0 = B1 (x) C2 - C1 (x) B2, delta1 = C1 (x) A2 - A1 (x) C2,
/// delta2 = A1 (x) B2 - B1 (x) A2 (Kronecker products).
DeltaOperators build_deltas(const PencilRep& rep1, const PencilRep& rep2);

struct MepEigenpair {
  Complex x;
  Complex y;
  Eigen::VectorXcd w;
};

/// Eigendecomposition of the pencil (delta1, delta0): x from the
/// eigenvalues, y recovered from the shared eigenvector. Requires a
/// well-conditioned delta0; the singular case is out of scope.
std::vector<MepEigenpair> solve_mep(const DeltaOperators& deltas);

struct SystemRoot {
  Complex x;
  Complex y;
  double res_p = 0.0;
  double res_q = 0.0;
};

struct RootSet {
  std::vector<SystemRoot> roots;
  std::size_t count() const { return roots.size(); }
};

/// Full pipeline: robust representations of p and q, operator determinants,
/// eigenvalues, per-root residuals of both polynomials, sorted by residual.
RootSet solve_system(const BivariatePoly& p, const BivariatePoly& q,
                     std::uint64_t seed = 0, bool refine = false,
                     double delta = kDefaultDelta);

}  // namespace detrep
