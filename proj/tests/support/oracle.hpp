#pragma once

// Independent reference computations for the tests.  Nothing here calls the
// library's arithmetic; everything is built entry by entry.

#include <complex>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "cqt/cqt_matrix.hpp"
#include "cqt/finite_qt.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Coeffs = std::map<int, cplx>;

inline Coeffs coeff_map(const cqt::LaurentSymbol& a) {
  Coeffs m;
  for (int d = a.min_deg(); d <= a.max_deg(); ++d) m[d] = a.coeff(d);
  return m;
}

inline Coeffs convolve(const Coeffs& a, const Coeffs& b) {
  Coeffs c;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) c[i + j] += x * y;
  return c;
}

inline cplx at(const Coeffs& c, int d) {
  auto it = c.find(d);
  return it == c.end() ? cplx{} : it->second;
}

inline Matrix toeplitz(const Coeffs& a, long rows, long cols) {
  Matrix t(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) t(i, j) = at(a, static_cast<int>(j - i));
  return t;
}

inline Matrix section(const cqt::CqtMatrix& a, long n) {
  const Coeffs c = coeff_map(a.symbol);
  Matrix s = toeplitz(c, n, n);
  for (long i = 0; i < std::min<long>(n, a.corr.rows()); ++i)
    for (long j = 0; j < std::min<long>(n, a.corr.cols()); ++j)
      for (long k = 0; k < a.corr.rank(); ++k) s(i, j) += a.corr.u(i, k) * a.corr.v(j, k);
  return s;
}

inline Matrix dense(const cqt::FiniteQtMatrix& a) {
  const long m = a.m;
  Matrix s = toeplitz(coeff_map(a.symbol), m, m);
  for (long i = 0; i < a.tl.rows(); ++i)
    for (long j = 0; j < a.tl.cols(); ++j)
      for (long k = 0; k < a.tl.rank(); ++k) s(i, j) += a.tl.u(i, k) * a.tl.v(j, k);
  for (long i = 0; i < a.br.rows(); ++i)
    for (long j = 0; j < a.br.cols(); ++j)
      for (long k = 0; k < a.br.rank(); ++k)
        s(m - 1 - i, m - 1 - j) += a.br.u(i, k) * a.br.v(j, k);
  return s;
}

// h_ij = s_{i+j+1}, s given as coefficients of z^k, k >= 1.
inline Matrix hankel(const Coeffs& s, long rows, long cols) {
  Matrix h(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) h(i, j) = at(s, static_cast<int>(i + j + 1));
  return h;
}

inline double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

class Random {
 public:
  explicit Random(unsigned seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  cplx complex(double r = 1.0) { return {uniform(-r, r), uniform(-r, r)}; }

  // Coefficients on degrees [lo, hi] scaled to Wiener norm `mass`.
  cqt::LaurentSymbol symbol(int lo, int hi, double mass = 1.5) {
    std::vector<cplx> c(static_cast<std::size_t>(hi - lo + 1));
    double total = 0.0;
    for (auto& x : c) {
      x = complex();
      total += std::abs(x);
    }
    for (auto& x : c) x *= mass / total;
    return {lo, std::move(c)};
  }

  Matrix matrix(long rows, long cols, double r = 1.0) {
    Matrix m(rows, cols);
    for (long i = 0; i < rows; ++i)
      for (long j = 0; j < cols; ++j) m(i, j) = complex(r);
    return m;
  }

  // Random correction with entrywise-sum norm close to `mass`.
  cqt::Correction correction(long p, long q, long r, double mass = 1.0) {
    Matrix u = matrix(p, r), v = matrix(q, r);
    const double s = (u * v.transpose()).cwiseAbs().sum();
    return {u * (mass / s), v};
  }

  // Invertible: dominant a_0 = 4, off-diagonal Wiener mass <= 2.
  cqt::CqtMatrix invertible(int band, long p, long q) {
    cqt::LaurentSymbol off = symbol(-band, band, uniform(0.5, 2.0));
    off = off - cqt::LaurentSymbol::constant(off.coeff(0));
    cqt::LaurentSymbol a = cqt::LaurentSymbol::constant(4.0) + off;
    const long r = std::max<long>(1, std::min(p, q) / 2);
    Matrix u = matrix(p, r), v = matrix(q, r);
    const double f = (u * v.transpose()).norm();
    return {a, cqt::Correction(u * (uniform(0.2, 1.0) / f), v)};
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace oracle
