#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "detrep/minrep.hpp"
#include "detrep/transform.hpp"

namespace detrep {

struct QualityReport {
  double nu = 0.0;
  double scaled = 0.0;  // nu * max(|A|_inf, |B|_inf, |C|_inf)
  bool passed = false;
  int samples = 0;
};

/// Sample coordinates with real and imaginary parts uniform on [0, 1].
std::vector<std::pair<Complex, Complex>> sample_points(int count,
                                                       std::uint64_t seed);

QualityReport quality_at(const BivariatePoly& p, const PencilRep& rep,
                         std::span<const std::pair<Complex, Complex>> points,
                         double eps = kDefaultEps,
                         double delta = kDefaultDelta);

/// nu = max_i |p(x_i,y_i) - det(A + x_i B + y_i C)| / (|p(x_i,y_i)| + eps)
/// over `samples` random points, scaled by the largest matrix infinity norm.
QualityReport quality(const BivariatePoly& p, const PencilRep& rep,
                      int samples = kDefaultSamples, double eps = kDefaultEps,
                      double delta = kDefaultDelta, std::uint64_t seed = 0);

struct AttemptRecord {
  int index = 0;
  std::string strategy;  // "direct", "swap-xy", "random-<i>"
  bool constructed = false;
  double scaled = -1.0;  // quality score when constructed
  std::string failure;
};

struct RobustResult {
  bool passed = false;
  bool constructed = false;  // rep/report/transform hold the best attempt
  PencilRep rep;
  ProjectiveTransform transform;
  NormalizationRecord normalization;
  QualityReport report;
  std::string diagnostic;  // empty when passed
  std::vector<AttemptRecord> trace;
};

/// normalize -> construct -> quality, retried on a poor score by first
/// exchanging the roles of x and y and then by random changes of variables.
/// The returned representation is pulled back to the original variables and
/// scored against the original polynomial; sample points are shared across
/// attempts. Deterministic for a fixed seed.
RobustResult robust_construct(const BivariatePoly& p,
                              double delta = kDefaultDelta,
                              std::uint64_t seed = 0,
                              int samples = kDefaultSamples,
                              double eps = kDefaultEps);

}  // namespace detrep
