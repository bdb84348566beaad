#pragma once

#include <Eigen/Dense>

#include "detrep/pencil.hpp"
#include "detrep/poly.hpp"

namespace detrep {

/// Invertible change of homogeneous coordinates [x; y; z] = T [x~; y~; z~].
struct ProjectiveTransform {
  Eigen::Matrix3cd T = Eigen::Matrix3cd::Identity();

  static ProjectiveTransform identity();
  static ProjectiveTransform swap_xy();
  /// x = x~ + s y~ + t z~, with y and z unchanged.
  static ProjectiveTransform shift(Complex s, Complex t);
  /// Complex Gaussian entries, rejected above tol::transform_cond_max.
  static ProjectiveTransform random(Rng& rng);

  /// Composition: apply *this first, then next.
  ProjectiveTransform then(const ProjectiveTransform& next) const;
  ProjectiveTransform inverse() const;
  double cond() const;
  bool is_identity() const;
};

/// Homogenizes p at its degree bound, substitutes the transformed
/// coordinates and dehomogenizes at z~ = 1. Exact polynomial expansion of
/// the powers of the three linear forms; the degree bound is preserved.
BivariatePoly apply_transform(const BivariatePoly& p,
                              const ProjectiveTransform& t);

struct NormalizationRecord {
  ProjectiveTransform transform;  // composition of everything applied
  BivariatePoly normalized;
  Complex shift_s{0.0};
  Complex shift_t{0.0};
};

/// Does p already satisfy the conditions construct() needs?
bool is_normal(const BivariatePoly& p);

/// The substitution x = x~ + s y~ + t z~ with s a root of the boundary
/// polynomial and t chosen so that the two trailing coefficients vanish.
/// Requires p_n0 != 0 and simple boundary roots.
NormalizationRecord shift_substitution(const BivariatePoly& p);

/// Brings p into the form required by construct(), applying random changes
/// of variables as needed. Deterministic for a fixed seed. Reports a likely
/// non-square-free input after kMaxNormalizeAttempts failures.
NormalizationRecord normalize(const BivariatePoly& p, std::uint64_t seed);

/// Representation of the original polynomial from a representation of the
/// transformed one: linear recombination of A, B, C by the rows of T^{-1}.
PencilRep pull_back(const PencilRep& rep, const ProjectiveTransform& t);

}  // namespace detrep
