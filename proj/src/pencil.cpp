#include "detrep/pencil.hpp"

#include <Eigen/LU>

namespace detrep {

Complex PencilRep::det_at(Complex x, Complex y) const {
  if (order() == 1) return A(0, 0) + x * B(0, 0) + y * C(0, 0);
  const Eigen::MatrixXcd m = A + x * B + y * C;
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(m).determinant();
}

double PencilRep::max_inf_norm() const {
  const auto inf = [](const Eigen::MatrixXcd& m) {
    return m.cwiseAbs().rowwise().sum().maxCoeff();
  };
  return std::max({inf(A), inf(B), inf(C)});
}

PencilRep balance_pencil(const PencilRep& rep) {
  const Eigen::Index n = rep.order();
  if (n == 1) return rep;

  Eigen::MatrixXd w =
      rep.A.cwiseAbs().cwiseMax(rep.B.cwiseAbs()).cwiseMax(rep.C.cwiseAbs());

  // Sinkhorn-style sweeps: pull every row and column maximum towards one.
  std::vector<int> row_e(n, 0), col_e(n, 0);
  for (int sweep = 0; sweep < 50; ++sweep) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double m = w.row(i).maxCoeff();
      if (m <= 0.0) continue;
      const int e = static_cast<int>(std::lround(-std::log2(m)));
      if (e != 0) {
        changed = true;
        row_e[i] += e;
        w.row(i) *= std::ldexp(1.0, e);
      }
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const double m = w.col(j).maxCoeff();
      if (m <= 0.0) continue;
      const int e = static_cast<int>(std::lround(-std::log2(m)));
      if (e != 0) {
        changed = true;
        col_e[j] += e;
        w.col(j) *= std::ldexp(1.0, e);
      }
    }
    if (!changed) break;
  }

  // det(D1) det(D2) must be one: spread the accumulated exponent back over
  // the rows as evenly as possible, keeping every factor a power of two.
  long long total = 0;
  for (Eigen::Index i = 0; i < n; ++i) total += row_e[i] + col_e[i];
  const long long base = total / static_cast<long long>(n);
  long long rest = total - base * static_cast<long long>(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    long long take = base;
    if (rest > 0) {
      ++take;
      --rest;
    } else if (rest < 0) {
      --take;
      ++rest;
    }
    row_e[i] -= static_cast<int>(take);
  }

  PencilRep out = rep;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double f = std::ldexp(1.0, row_e[i] + col_e[j]);
      out.A(i, j) *= f;
      out.B(i, j) *= f;
      out.C(i, j) *= f;
    }
  }
  return out;
}

}  // namespace detrep
