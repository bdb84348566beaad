#include "detrep/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace detrep {

std::vector<std::pair<Complex, Complex>> sample_points(int count,
                                                       std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<Complex, Complex>> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    const Complex x = rng.complex_uniform01();
    const Complex y = rng.complex_uniform01();
    pts.emplace_back(x, y);
  }
  return pts;
}

QualityReport quality_at(const BivariatePoly& p, const PencilRep& rep,
                         std::span<const std::pair<Complex, Complex>> points,
                         double eps, double delta) {
  QualityReport report;
  report.samples = static_cast<int>(points.size());
  for (const auto& [x, y] : points) {
    const Complex pv = eval(p, x, y);
    const Complex dv = rep.det_at(x, y);
    report.nu = std::max(report.nu, std::abs(pv - dv) / (std::abs(pv) + eps));
  }
  report.scaled = report.nu * rep.max_inf_norm();
  report.passed = report.scaled <= delta;
  return report;
}

QualityReport quality(const BivariatePoly& p, const PencilRep& rep,
                      int samples, double eps, double delta,
                      std::uint64_t seed) {
  const auto pts = sample_points(samples, sub_seed(seed, 0x5A11ULL));
  return quality_at(p, rep, pts, eps, delta);
}

RobustResult robust_construct(const BivariatePoly& p_in, double delta,
                              std::uint64_t seed, int samples, double eps) {
  const BivariatePoly p = p_in.trimmed();
  const int n = p.degree_bound();
  if (n == 0) {
    throw NumericalError(ErrorCode::constant_polynomial,
                         "robust_construct: constant polynomial");
  }

  const auto pts = sample_points(samples, sub_seed(seed, 0x5A11ULL));
  RobustResult out;

  if (n == 1) {
    out.rep = construct(p);
    out.report = quality_at(p, out.rep, pts, eps, delta);
    out.constructed = true;
    out.passed = out.report.passed;
    out.normalization.normalized = p;
    out.trace.push_back({1, "direct", true, out.report.scaled, ""});
    return out;
  }

  double best_scaled = std::numeric_limits<double>::infinity();
  int non_square_free = 0;
  std::string last_failure;

  for (int attempt = 1; attempt <= kMaxRobustAttempts; ++attempt) {
    ProjectiveTransform pre;
    std::string strategy;
    if (attempt == 1) {
      strategy = "direct";
    } else if (attempt == 2) {
      pre = ProjectiveTransform::swap_xy();
      strategy = "swap-xy";
    } else {
      Rng rng(sub_seed(seed, 0xC0DEULL + attempt));
      pre = ProjectiveTransform::random(rng);
      strategy = "random-" + std::to_string(attempt - 2);
    }

    try {
      const BivariatePoly pre_poly =
          attempt == 1 ? p : apply_transform(p, pre);
      NormalizationRecord rec =
          normalize(pre_poly, sub_seed(seed, 0xAB1EULL + attempt));
      const PencilRep rep_normalized = construct(rec.normalized);
      const ProjectiveTransform total = pre.then(rec.transform);
      const PencilRep rep = balance_pencil(pull_back(rep_normalized, total));
      const QualityReport report = quality_at(p, rep, pts, eps, delta);

      out.trace.push_back({attempt, strategy, true, report.scaled, ""});
      if (report.scaled < best_scaled) {
        best_scaled = report.scaled;
        out.rep = rep;
        out.transform = total;
        out.normalization = {total, rec.normalized, rec.shift_s, rec.shift_t};
        out.report = report;
        out.constructed = true;
      }
      if (report.passed) {
        out.passed = true;
        return out;
      }
    } catch (const NumericalError& err) {
      out.trace.push_back({attempt, strategy, false, -1.0, err.what()});
      if (err.code() == ErrorCode::likely_non_square_free) ++non_square_free;
      last_failure = err.what();
    }
  }

  if (!out.constructed && non_square_free > 0) {
    out.diagnostic = "likely non-square-free";
  } else if (!out.constructed) {
    out.diagnostic = "construction failed: " + last_failure;
  } else {
    out.diagnostic = "quality threshold not met; best scaled score " +
                     std::to_string(out.report.scaled);
  }
  return out;
}

}  // namespace detrep
