#include "detrep/poly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace detrep {

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

BivariatePoly::BivariatePoly(int degree_bound)
    : n_(degree_bound),
      c_(static_cast<std::size_t>(degree_bound + 1) * (degree_bound + 2) / 2) {
  assert(degree_bound >= 0);
}

BivariatePoly BivariatePoly::constant(Complex value) {
  BivariatePoly p(0);
  p.set(0, 0, value);
  return p;
}

int BivariatePoly::true_degree(double rel_tol) const {
  const double cutoff = rel_tol * max_abs();
  for (int d = n_; d >= 1; --d) {
    for (int i = 0; i <= d; ++i) {
      if (std::abs(coeff(i, d - i)) > cutoff) return d;
    }
  }
  return 0;
}

double BivariatePoly::max_abs() const {
  double m = 0.0;
  for (const Complex& v : c_) m = std::max(m, std::abs(v));
  return m;
}

BivariatePoly BivariatePoly::trimmed() const {
  const int d = true_degree();
  if (d == n_) return *this;
  BivariatePoly out(d);
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; j <= d - i; ++j) out.set(i, j, coeff(i, j));
  }
  return out;
}

UnivariatePoly::UnivariatePoly(std::vector<Complex> coeffs_high_first)
    : c_(std::move(coeffs_high_first)) {
  if (c_.empty()) c_.assign(1, Complex(0.0));
}

Complex UnivariatePoly::coeff_of_power(int power) const {
  assert(power >= 0 && power <= degree());
  return c_[degree() - power];
}

Complex UnivariatePoly::eval(Complex t) const {
  Complex acc(0.0);
  for (const Complex& v : c_) acc = acc * t + v;
  return acc;
}

UnivariatePoly UnivariatePoly::derivative() const {
  const int d = degree();
  if (d == 0) return UnivariatePoly();
  std::vector<Complex> out(d);
  for (int k = 0; k < d; ++k) out[k] = c_[k] * Complex(d - k);
  return UnivariatePoly(std::move(out));
}

UnivariatePoly UnivariatePoly::trimmed(double rel_tol) const {
  const double cutoff = rel_tol * max_abs();
  std::size_t first = 0;
  while (first + 1 < c_.size() && std::abs(c_[first]) <= cutoff) ++first;
  return UnivariatePoly(std::vector<Complex>(c_.begin() + first, c_.end()));
}

double UnivariatePoly::max_abs() const {
  double m = 0.0;
  for (const Complex& v : c_) m = std::max(m, std::abs(v));
  return m;
}

UnivariatePoly UnivariatePoly::from_roots(std::span<const Complex> roots,
                                          Complex lead) {
  std::vector<Complex> c{lead};
  for (const Complex& r : roots) {
    c.push_back(Complex(0.0));
    for (std::size_t k = c.size() - 1; k >= 1; --k) c[k] -= r * c[k - 1];
  }
  return UnivariatePoly(std::move(c));
}

Complex eval(const BivariatePoly& p, Complex x, Complex y) {
  const int n = p.degree_bound();
  Complex acc(0.0);
  for (int i = n; i >= 0; --i) {
    Complex row(0.0);
    for (int j = n - i; j >= 0; --j) row = row * y + p.coeff(i, j);
    acc = acc * x + row;
  }
  return acc;
}

UnivariatePoly boundary_univariate(const BivariatePoly& p) {
  const int d = p.true_degree();
  if (d == 0) {
    throw NumericalError(ErrorCode::constant_polynomial,
                         "boundary_univariate: constant polynomial has no "
                         "boundary restriction");
  }
  std::vector<Complex> c(d + 1);
  for (int idx = 0; idx <= d; ++idx) c[idx] = p.coeff(d - idx, idx);
  return UnivariatePoly(std::move(c));
}

UnivariatePoly reduced_boundary(const BivariatePoly& p) {
  const int d = p.true_degree();
  if (d == 0) {
    throw NumericalError(ErrorCode::constant_polynomial,
                         "reduced_boundary: constant polynomial");
  }
  const double scale = p.max_abs();
  if (std::abs(p.coeff(d, 0)) <= tol::lead * scale) {
    throw NumericalError(ErrorCode::leading_coefficient_zero,
                         "reduced_boundary: coefficient of x^n vanishes");
  }
  if (std::abs(p.coeff(0, d)) > tol::tail_zero * scale) {
    throw NumericalError(ErrorCode::tail_not_zero,
                         "reduced_boundary: coefficient of y^n is not zero");
  }
  std::vector<Complex> c(d);
  for (int idx = 0; idx < d; ++idx) c[idx] = p.coeff(d - idx, idx);
  return UnivariatePoly(std::move(c));
}

namespace {

// Parlett-Reinsch style balancing with powers of two.
void balance_companion(Eigen::MatrixXcd& m) {
  const Eigen::Index d = m.rows();
  bool changed = true;
  int sweeps = 0;
  while (changed && sweeps++ < 50) {
    changed = false;
    for (Eigen::Index i = 0; i < d; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (Eigen::Index j = 0; j < d; ++j) {
        if (j == i) continue;
        r += std::abs(m(i, j));
        c += std::abs(m(j, i));
      }
      if (r == 0.0 || c == 0.0) continue;
      int e = 0;
      std::frexp(r / c, &e);
      e /= 2;
      if (e != 0 && std::ldexp(c, e) + std::ldexp(r, -e) < 0.95 * (c + r)) {
        changed = true;
        m.row(i) *= std::ldexp(1.0, -e);
        m.col(i) *= std::ldexp(1.0, e);
      }
    }
  }
}

}  // namespace

std::vector<Complex> univariate_roots(const UnivariatePoly& u) {
  const UnivariatePoly m = u.trimmed();
  const int d = m.degree();
  if (d < 1) {
    throw NumericalError(ErrorCode::invalid_argument,
                         "univariate_roots: degree must be at least 1");
  }
  const Complex lead = m.leading();
  if (d == 1) return {-m.coeffs()[1] / lead};

  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) comp(i + 1, i) = Complex(1.0);
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -m.coeffs()[d - i] / lead;
  balance_companion(comp);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  if (es.info() != Eigen::Success) {
    throw NumericalError(ErrorCode::construction_failed,
                         "univariate_roots: eigenvalue iteration failed");
  }
  const auto& ev = es.eigenvalues();
  return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

void order_roots(std::vector<Complex>& roots) {
  if (roots.empty()) return;
  double maxabs = 0.0;
  for (const Complex& r : roots) maxabs = std::max(maxabs, std::abs(r));
  const double zero_cut = tol::zero_root * maxabs;

  const auto lex = [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  };
  std::vector<Complex> nonzero;
  std::vector<Complex> zeros;
  for (const Complex& r : roots) {
    (std::abs(r) <= zero_cut ? zeros : nonzero).push_back(r);
  }
  std::sort(nonzero.begin(), nonzero.end(), lex);
  std::sort(zeros.begin(), zeros.end(), lex);
  roots = std::move(nonzero);
  roots.insert(roots.end(), zeros.begin(), zeros.end());
}

double min_pairwise_separation(std::span<const Complex> roots) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < roots.size(); ++a) {
    for (std::size_t b = a + 1; b < roots.size(); ++b) {
      best = std::min(best, std::abs(roots[a] - roots[b]));
    }
  }
  return best;
}

bool roots_simple(std::span<const Complex> roots) {
  if (roots.size() < 2) return true;
  double maxabs = 0.0;
  for (const Complex& r : roots) maxabs = std::max(maxabs, std::abs(r));
  return min_pairwise_separation(roots) > tol::sep * (1.0 + maxabs);
}

BivariatePoly poly_add(const BivariatePoly& p, const BivariatePoly& q) {
  BivariatePoly out(std::max(p.degree_bound(), q.degree_bound()));
  for (int i = 0; i <= p.degree_bound(); ++i) {
    for (int j = 0; j <= p.degree_bound() - i; ++j) out.add_to(i, j, p.coeff(i, j));
  }
  for (int i = 0; i <= q.degree_bound(); ++i) {
    for (int j = 0; j <= q.degree_bound() - i; ++j) out.add_to(i, j, q.coeff(i, j));
  }
  return out;
}

BivariatePoly poly_sub(const BivariatePoly& p, const BivariatePoly& q) {
  return poly_add(p, poly_scale(q, Complex(-1.0)));
}

BivariatePoly poly_scale(const BivariatePoly& p, Complex factor) {
  BivariatePoly out(p.degree_bound());
  for (int i = 0; i <= p.degree_bound(); ++i) {
    for (int j = 0; j <= p.degree_bound() - i; ++j) {
      out.set(i, j, factor * p.coeff(i, j));
    }
  }
  return out;
}

BivariatePoly poly_mul_linear(const BivariatePoly& p, Complex a, Complex b) {
  BivariatePoly out(p.degree_bound() + 1);
  for (int i = 0; i <= p.degree_bound(); ++i) {
    for (int j = 0; j <= p.degree_bound() - i; ++j) {
      const Complex v = p.coeff(i, j);
      if (v == Complex(0.0)) continue;
      out.add_to(i + 1, j, a * v);
      out.add_to(i, j + 1, b * v);
    }
  }
  return out;
}

BivariatePoly poly_mul(const BivariatePoly& p, const BivariatePoly& q) {
  BivariatePoly out(p.degree_bound() + q.degree_bound());
  for (int i = 0; i <= p.degree_bound(); ++i) {
    for (int j = 0; j <= p.degree_bound() - i; ++j) {
      const Complex v = p.coeff(i, j);
      if (v == Complex(0.0)) continue;
      for (int a = 0; a <= q.degree_bound(); ++a) {
        for (int b = 0; b <= q.degree_bound() - a; ++b) {
          out.add_to(i + a, j + b, v * q.coeff(a, b));
        }
      }
    }
  }
  return out;
}

BivariatePoly deriv_x(const BivariatePoly& p) {
  const int n = p.degree_bound();
  BivariatePoly out(std::max(n - 1, 0));
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; j <= n - i; ++j) {
      out.set(i - 1, j, Complex(static_cast<double>(i)) * p.coeff(i, j));
    }
  }
  return out;
}

BivariatePoly deriv_y(const BivariatePoly& p) {
  const int n = p.degree_bound();
  BivariatePoly out(std::max(n - 1, 0));
  for (int i = 0; i <= n; ++i) {
    for (int j = 1; j <= n - i; ++j) {
      out.set(i, j - 1, Complex(static_cast<double>(j)) * p.coeff(i, j));
    }
  }
  return out;
}

}  // namespace detrep
