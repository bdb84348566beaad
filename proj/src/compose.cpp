#include "detrep/compose.hpp"

#include <string>

namespace detrep {

PencilRep block_diag(std::span<const PencilRep> reps) {
  if (reps.empty()) {
    throw NumericalError(ErrorCode::invalid_argument,
                         "block_diag: empty list");
  }
  Eigen::Index total = 0;
  for (const PencilRep& r : reps) total += r.order();

  PencilRep out;
  out.A = Eigen::MatrixXcd::Zero(total, total);
  out.B = Eigen::MatrixXcd::Zero(total, total);
  out.C = Eigen::MatrixXcd::Zero(total, total);
  Eigen::Index offset = 0;
  for (const PencilRep& r : reps) {
    const Eigen::Index m = r.order();
    out.A.block(offset, offset, m, m) = r.A;
    out.B.block(offset, offset, m, m) = r.B;
    out.C.block(offset, offset, m, m) = r.C;
    offset += m;
  }
  return out;
}

PencilRep represent_factored(std::span<const Factor> factors, double delta,
                             std::uint64_t seed) {
  if (factors.empty()) {
    throw NumericalError(ErrorCode::invalid_argument,
                         "represent_factored: no factors");
  }
  std::vector<PencilRep> blocks;
  for (std::size_t idx = 0; idx < factors.size(); ++idx) {
    const Factor& f = factors[idx];
    if (f.multiplicity < 1) {
      throw NumericalError(ErrorCode::invalid_argument,
                           "represent_factored: multiplicity must be >= 1");
    }
    const RobustResult rr =
        robust_construct(f.poly, delta, sub_seed(seed, idx));
    if (!rr.passed) {
      throw NumericalError(ErrorCode::construction_failed,
                           "represent_factored: factor " +
                               std::to_string(idx + 1) +
                               " failed: " + rr.diagnostic);
    }
    for (int m = 0; m < f.multiplicity; ++m) blocks.push_back(rr.rep);
  }
  return block_diag(blocks);
}

}  // namespace detrep
