#include "detrep/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace detrep {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json complex_to_json(const Complex& v) {
  return nlohmann::json::array({v.real(), v.imag()});
}

Complex complex_from_json(const nlohmann::json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out.push_back(complex_to_json(m(r, c)));
    }
  }
  return out;
}

Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j, Eigen::Index n) {
  if (static_cast<Eigen::Index>(j.size()) != n * n) {
    throw ParseError("matrix entry count does not match the stated order");
  }
  Eigen::MatrixXcd m(n, n);
  Eigen::Index idx = 0;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = complex_from_json(j[idx++]);
  }
  return m;
}

std::string format_complex(const Complex& v) {
  if (v.imag() == 0.0) return fmt(v.real());
  if (v.real() == 0.0) return fmt(v.imag()) + "i";
  std::string out = fmt(v.real());
  if (v.imag() > 0.0) out += "+";
  return out + fmt(v.imag()) + "i";
}

}  // namespace

BivariatePoly read_poly(std::istream& in) {
  std::string line;
  int n = -1;
  BivariatePoly p;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (n < 0) {
      std::string word;
      ls >> word >> n;
      if (word != "degree" || ls.fail() || n < 0 || n > 64) {
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected header \"degree n\" with 0 <= n <= 64");
      }
      p = BivariatePoly(n);
      continue;
    }
    int i = 0, j = 0;
    double re = 0.0, im = 0.0;
    ls >> i >> j >> re;
    if (ls.fail()) {
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected \"i j re [im]\"");
    }
    ls >> im;
    if (ls.fail()) im = 0.0;
    std::string rest;
    if (ls.clear(), ls >> rest, !rest.empty() && rest[0] != '#') {
      throw ParseError("line " + std::to_string(lineno) +
                       ": trailing input \"" + rest + "\"");
    }
    if (i < 0 || j < 0 || i + j > n) {
      throw ParseError("line " + std::to_string(lineno) +
                       ": term x^" + std::to_string(i) + " y^" +
                       std::to_string(j) + " lies outside degree " +
                       std::to_string(n));
    }
    p.set(i, j, Complex(re, im));
  }
  if (n < 0) throw ParseError("missing \"degree n\" header");
  return p;
}

BivariatePoly read_poly_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_poly(in);
}

void write_poly(std::ostream& out, const BivariatePoly& p) {
  const int n = p.degree_bound();
  out << "degree " << n << "\n";
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n - i; ++j) {
      const Complex v = p.coeff(i, j);
      if (v == Complex(0.0)) continue;
      out << i << " " << j << " " << fmt(v.real()) << " " << fmt(v.imag())
          << "\n";
    }
  }
}

std::string poly_to_text(const BivariatePoly& p) {
  std::ostringstream out;
  write_poly(out, p);
  return out.str();
}

BivariatePoly poly_from_text(const std::string& text) {
  std::istringstream in(text);
  return read_poly(in);
}

nlohmann::json to_json(const PencilRep& rep) {
  return {{"m", rep.order()},
          {"A", matrix_to_json(rep.A)},
          {"B", matrix_to_json(rep.B)},
          {"C", matrix_to_json(rep.C)}};
}

PencilRep pencil_from_json(const nlohmann::json& j) {
  const Eigen::Index n = j.at("m").get<Eigen::Index>();
  if (n < 1) throw ParseError("pencil order must be positive");
  PencilRep rep;
  rep.A = matrix_from_json(j.at("A"), n);
  rep.B = matrix_from_json(j.at("B"), n);
  rep.C = matrix_from_json(j.at("C"), n);
  return rep;
}

nlohmann::json to_json(const QualityReport& report) {
  return {{"nu", report.nu},
          {"scaled", report.scaled},
          {"passed", report.passed},
          {"samples", report.samples}};
}

nlohmann::json to_json(const RootSet& roots) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SystemRoot& r : roots.roots) {
    arr.push_back({{"x", complex_to_json(r.x)},
                   {"y", complex_to_json(r.y)},
                   {"res_p", r.res_p},
                   {"res_q", r.res_q}});
  }
  return {{"count", roots.count()}, {"roots", arr}};
}

nlohmann::json to_json(const NormalizationRecord& rec) {
  nlohmann::json t = nlohmann::json::array();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) t.push_back(complex_to_json(rec.transform.T(r, c)));
  }
  return {{"T", t},
          {"s", complex_to_json(rec.shift_s)},
          {"t", complex_to_json(rec.shift_t)},
          {"normalized", poly_to_text(rec.normalized)}};
}

std::string format_pencil(const PencilRep& rep) {
  std::ostringstream out;
  const auto dump = [&](const char* name, const Eigen::MatrixXcd& m) {
    out << name << " =\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      out << "  ";
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        out << format_complex(m(r, c));
        if (c + 1 < m.cols()) out << "  ";
      }
      out << "\n";
    }
  };
  dump("A", rep.A);
  dump("B", rep.B);
  dump("C", rep.C);
  return out.str();
}

std::string roots_to_csv(const RootSet& roots) {
  std::ostringstream out;
  out << "x_re,x_im,y_re,y_im,res_p,res_q\n";
  for (const SystemRoot& r : roots.roots) {
    out << fmt(r.x.real()) << "," << fmt(r.x.imag()) << "," << fmt(r.y.real())
        << "," << fmt(r.y.imag()) << "," << fmt(r.res_p) << ","
        << fmt(r.res_q) << "\n";
  }
  return out.str();
}

}  // namespace detrep
