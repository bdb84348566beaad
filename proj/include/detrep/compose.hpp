#pragma once

#include <span>

#include "detrep/verify.hpp"

namespace detrep {

/// Block-diagonal assembly: det of the result is the product of the factor
/// determinants, the order is the sum of the factor orders.
PencilRep block_diag(std::span<const PencilRep> reps);

struct Factor {
  BivariatePoly poly;
  int multiplicity = 1;
};

/// Representation of prod p_i^{m_i} from robust constructions of the
/// (caller-supplied, square-free) factors, each block repeated per its
/// multiplicity.
PencilRep represent_factored(std::span<const Factor> factors,
                             double delta = kDefaultDelta,
                             std::uint64_t seed = 0);

}  // namespace detrep
