#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace detrep {

using Complex = std::complex<double>;

/// Failure modes callers are expected to branch on (retry with a fresh
/// change of variables, report a non-square-free input, ...).
enum class ErrorCode {
  constant_polynomial,
  leading_coefficient_zero,  // condition (a) violated
  tail_not_zero,             // condition (c) violated
  roots_not_simple,
  zero_root_misplaced,
  multiple_boundary_root,
  ill_conditioned_beta_system,
  annihilation_failed,
  residual_not_linear,
  likely_non_square_free,
  singular_transform,
  singular_delta0,
  construction_failed,
  invalid_argument,
};

class NumericalError : public std::runtime_error {
 public:
  NumericalError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

namespace tol {
// Coefficients below trim * max|p_ij| do not count towards the degree.
inline constexpr double trim = 1e-12;
// A root below zero_root * max|xi| is treated as zero and ordered last.
inline constexpr double zero_root = 1e-10;
// Roots are simple when pairwise distances exceed sep * (1 + max|xi|).
inline constexpr double sep = 1e-6;
// Coefficients required to vanish by condition (c) / the shift step.
inline constexpr double tail_zero = 1e-10;
// Condition (a): the leading coefficient must clear this fraction of scale.
inline constexpr double lead = 1e-8;
// The degree-(n-k) coefficient of g must cancel to this fraction of ||h||.
inline constexpr double g_top = 1e-8;
// Diagonal entries of the beta system, relative to max|W|.
inline constexpr double w_diag = 1e-12;
inline constexpr double w_cond_max = 1e10;
// Residual coefficient a gamma step must annihilate, relative to ||p||.
inline constexpr double annihilation = 1e-10;
// Final residual: everything except r00 + r10 x, relative to ||p||.
inline constexpr double residual_tail = 1e-8;
// Random projective transforms are rejected above this condition number.
inline constexpr double transform_cond_max = 1e6;
// Delta0 counts as singular below this reciprocal condition estimate.
inline constexpr double singular = 1e-12;
}  // namespace tol

inline constexpr int kMaxNormalizeAttempts = 5;
inline constexpr int kMaxRobustAttempts = 5;
inline constexpr int kDefaultSamples = 200;
inline constexpr double kDefaultEps = 1e-4;
inline constexpr double kDefaultDelta = 1e-8;

/// Deterministic stream splitting (splitmix64 over seed and tag).
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t tag);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return unif_(gen_); }
  Complex complex_uniform01() {
    const double re = unif_(gen_);
    const double im = unif_(gen_);
    return {re, im};
  }
  double gaussian() { return normal_(gen_); }
  Complex complex_gaussian() {
    const double re = normal_(gen_);
    const double im = normal_(gen_);
    return {re, im};
  }

 private:
  std::mt19937_64 gen_;
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace detrep
