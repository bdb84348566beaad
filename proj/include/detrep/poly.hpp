#pragma once

#include <cassert>
#include <span>
#include <vector>

#include "detrep/types.hpp"

namespace detrep {

/// Dense bivariate polynomial over the complex numbers, stored as the
/// triangular coefficient table p_ij with i the power of x, j the power
/// of y and i + j <= degree bound. The bound may exceed the true degree
/// (slack bound); trimmed() produces the canonical form.
class BivariatePoly {
 public:
  BivariatePoly() : n_(0), c_(1) {}
  explicit BivariatePoly(int degree_bound);

  static BivariatePoly constant(Complex value);

  int degree_bound() const { return n_; }
  /// Largest total degree carrying a coefficient above rel_tol * max|p_ij|.
  int true_degree(double rel_tol = tol::trim) const;

  Complex coeff(int i, int j) const { return c_[index(i, j)]; }
  void set(int i, int j, Complex value) { c_[index(i, j)] = value; }
  void add_to(int i, int j, Complex value) { c_[index(i, j)] += value; }

  double max_abs() const;
  /// Canonical form: degree bound reduced to the true degree.
  BivariatePoly trimmed() const;

 private:
  std::size_t index(int i, int j) const {
    assert(i >= 0 && j >= 0 && i + j <= n_);
    const std::size_t row = static_cast<std::size_t>(i);
    return row * (n_ + 1) - row * (row - 1) / 2 + j;
  }

  int n_;
  std::vector<Complex> c_;
};

/// Univariate polynomial with coefficients listed from the highest power
/// down. The leading coefficient is nonzero in canonical form; fixed-length
/// slices of a bivariate table (where the top entry may vanish) are also
/// carried in this representation.
class UnivariatePoly {
 public:
  UnivariatePoly() : c_(1) {}
  explicit UnivariatePoly(std::vector<Complex> coeffs_high_first);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return c_; }
  Complex leading() const { return c_.front(); }
  Complex coeff_of_power(int power) const;

  Complex eval(Complex t) const;
  UnivariatePoly derivative() const;
  UnivariatePoly trimmed(double rel_tol = tol::trim) const;
  double max_abs() const;

  /// Expands lead * prod (t - roots[i]), multiplying factors in index order.
  static UnivariatePoly from_roots(std::span<const Complex> roots,
                                   Complex lead = Complex(1.0));

 private:
  std::vector<Complex> c_;
};

/// Evaluates p by nested Horner recurrences, over y inside and x outside.
Complex eval(const BivariatePoly& p, Complex x, Complex y);

/// h(xi) = p_n0 xi^n + p_{n-1,1} xi^{n-1} + ... + p_0n, the degree-n part of
/// p read along falling x powers. Errors on constant input.
UnivariatePoly boundary_univariate(const BivariatePoly& p);

/// v(xi) = p_n0 xi^{n-1} + ... + p_{1,n-1}; requires p_n0 != 0 and p_0n = 0,
/// in which case h(xi) = xi * v(xi).
UnivariatePoly reduced_boundary(const BivariatePoly& p);

/// All deg(u) roots with multiplicity, as eigenvalues of the balanced
/// companion matrix.
std::vector<Complex> univariate_roots(const UnivariatePoly& u);

/// Sorts by (real, imaginary) ascending; any root within tol::zero_root of
/// zero (relative to the largest root) is moved to the back.
void order_roots(std::vector<Complex>& roots);
double min_pairwise_separation(std::span<const Complex> roots);
bool roots_simple(std::span<const Complex> roots);

BivariatePoly poly_add(const BivariatePoly& p, const BivariatePoly& q);
BivariatePoly poly_sub(const BivariatePoly& p, const BivariatePoly& q);
BivariatePoly poly_scale(const BivariatePoly& p, Complex factor);
/// (a x + b y) * p, with the degree bound raised by one.
BivariatePoly poly_mul_linear(const BivariatePoly& p, Complex a, Complex b);
BivariatePoly poly_mul(const BivariatePoly& p, const BivariatePoly& q);
BivariatePoly deriv_x(const BivariatePoly& p);
BivariatePoly deriv_y(const BivariatePoly& p);

}  // namespace detrep
