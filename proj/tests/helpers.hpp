#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <span>
#include <vector>

#include "detrep/poly.hpp"

namespace detrep::testing {

struct Term {
  int i;
  int j;
  Complex c;
};

inline BivariatePoly make_poly(int degree, std::initializer_list<Term> terms) {
  BivariatePoly p(degree);
  for (const Term& t : terms) p.set(t.i, t.j, t.c);
  return p;
}

// The degree-5 polynomial used throughout: its reduced boundary has the
// real roots -2, -1, 1, 2 and all conditions of the construction hold.
inline BivariatePoly example1() {
  return make_poly(5, {{0, 0, 1},  {1, 0, -1},  {0, 1, -3}, {2, 0, 3},
                       {1, 1, -7}, {0, 2, -6},  {3, 0, 10}, {2, 1, 9},
                       {1, 2, -14},{0, 3, -4},  {4, 0, 8},  {3, 1, 7},
                       {2, 2, -8}, {1, 3, -4},  {5, 0, 2},  {3, 2, -10},
                       {1, 4, 8}});
}

// Independent evaluation oracle: plain power sums, no Horner nesting.
inline Complex direct_eval(const BivariatePoly& p, Complex x, Complex y) {
  Complex acc(0.0);
  for (int i = 0; i <= p.degree_bound(); ++i) {
    for (int j = 0; j <= p.degree_bound() - i; ++j) {
      const Complex c = p.coeff(i, j);
      if (c == Complex(0.0)) continue;
      Complex term = c;
      for (int a = 0; a < i; ++a) term *= x;
      for (int b = 0; b < j; ++b) term *= y;
      acc += term;
    }
  }
  return acc;
}

// Independent expansion oracle for lead * x * prod (x - xi_i y): convolves
// raw coefficient rows without going through the library product routines.
inline std::vector<Complex> expand_top_product(std::span<const Complex> xi,
                                               Complex lead) {
  // Coefficients of prod (x - xi_i y) along falling x powers.
  std::vector<Complex> c{Complex(1.0)};
  for (const Complex& root : xi) {
    std::vector<Complex> next(c.size() + 1, Complex(0.0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k];
      next[k + 1] -= root * c[k];
    }
    c = std::move(next);
  }
  for (Complex& v : c) v *= lead;
  return c;  // entry k is the coefficient of x^{m-k} y^k, times lead * x
}

inline double max_coeff_diff(const BivariatePoly& a, const BivariatePoly& b) {
  double worst = 0.0;
  const int bound = std::max(a.degree_bound(), b.degree_bound());
  for (int i = 0; i <= bound; ++i) {
    for (int j = 0; j <= bound - i; ++j) {
      const Complex av =
          (i + j <= a.degree_bound()) ? a.coeff(i, j) : Complex(0.0);
      const Complex bv =
          (i + j <= b.degree_bound()) ? b.coeff(i, j) : Complex(0.0);
      worst = std::max(worst, std::abs(av - bv));
    }
  }
  return worst;
}

// Greedy multiset match; returns the worst pairing distance.
inline double match_roots(std::vector<Complex> got, std::vector<Complex> want) {
  if (got.size() != want.size()) return 1e300;
  double worst = 0.0;
  for (const Complex& w : want) {
    std::size_t best = 0;
    double best_d = 1e300;
    for (std::size_t k = 0; k < got.size(); ++k) {
      const double d = std::abs(got[k] - w);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    worst = std::max(worst, best_d);
    got.erase(got.begin() + best);
  }
  return worst;
}

inline BivariatePoly random_full(int degree, Rng& rng,
                                 bool complex_coeffs = true) {
  BivariatePoly p(degree);
  for (int i = 0; i <= degree; ++i) {
    for (int j = 0; j <= degree - i; ++j) {
      p.set(i, j, complex_coeffs ? rng.complex_uniform01()
                                 : Complex(rng.uniform01(), 0.0));
    }
  }
  return p;
}

// Random polynomial already satisfying the normalized-form conditions.
inline BivariatePoly random_normalized(int degree, Rng& rng,
                                       bool complex_coeffs = true) {
  for (;;) {
    BivariatePoly p = random_full(degree, rng, complex_coeffs);
    p.set(0, degree, Complex(0.0));
    if (degree >= 2) p.set(0, degree - 1, Complex(0.0));
    p.set(degree, 0, Complex(1.0) + p.coeff(degree, 0));
    std::vector<Complex> xi = univariate_roots(reduced_boundary(p));
    order_roots(xi);
    if (!roots_simple(xi)) continue;
    double xi_max = 0.0;
    for (const Complex& r : xi) xi_max = std::max(xi_max, std::abs(r));
    bool ok = true;
    for (std::size_t k = 0; k + 1 < xi.size(); ++k) {
      if (std::abs(xi[k]) <= 1e-6 * (1.0 + xi_max)) ok = false;
    }
    if (ok) return p;
  }
}

}  // namespace detrep::testing
