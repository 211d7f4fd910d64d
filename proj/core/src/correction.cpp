#include "cqt/correction.hpp"

#include <lapacke.h>

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cqt/error.hpp"

namespace cqt {
namespace {

constexpr Index kRowChunk = 64;

// Smallest count n such that rows n.. of the weights have squared mass <= budget^2.
Index trailing_cut(const Eigen::VectorXd& row_norms, double budget) {
  double tail = 0.0;
  const double b2 = budget * budget;
  Index n = row_norms.size();
  while (n > 0 && tail + row_norms(n - 1) * row_norms(n - 1) <= b2) {
    tail += row_norms(n - 1) * row_norms(n - 1);
    --n;
  }
  return n;
}

// Thin SVD x = U diag(s) V^H.  LAPACK's QR-iteration driver: Eigen 3.4's
// divide-and-conquer SVD loses accuracy on strongly graded matrices.
struct ThinSvd {
  Matrix u;
  Eigen::VectorXd s;
  Matrix v;
};

ThinSvd thin_svd(const Matrix& x) {
  const Index m = x.rows(), n = x.cols(), k = std::min(m, n);
  ThinSvd out{Matrix(m, k), Eigen::VectorXd(k), Matrix()};
  if (k == 0) return out;
  Matrix a = x;
  Matrix vh(k, n);
  std::vector<double> superb(static_cast<std::size_t>(std::max<Index>(1, k - 1)));
  const lapack_int info = LAPACKE_zgesvd(
      LAPACK_COL_MAJOR, 'S', 'S', static_cast<lapack_int>(m), static_cast<lapack_int>(n),
      reinterpret_cast<lapack_complex_double*>(a.data()), static_cast<lapack_int>(m),
      out.s.data(), reinterpret_cast<lapack_complex_double*>(out.u.data()),
      static_cast<lapack_int>(m), reinterpret_cast<lapack_complex_double*>(vh.data()),
      static_cast<lapack_int>(k), superb.data());
  if (info != 0) {
    throw Error(ErrorKind::NoConvergence, "zgesvd failed with info " + std::to_string(info));
  }
  out.v = vh.adjoint();
  return out;
}

Matrix thin_q(const Eigen::HouseholderQR<Matrix>& qr, Index k) {
  return qr.householderQ() * Matrix::Identity(qr.rows(), k);
}

Matrix thin_r(const Eigen::HouseholderQR<Matrix>& qr, Index k) {
  return qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
}

Correction compress_rank_one(const Correction& e, double tol) {
  const Eigen::VectorXd un = e.u.col(0).cwiseAbs();
  const Eigen::VectorXd vn = e.v.col(0).cwiseAbs();
  const double nu = un.norm();
  const double nv = vn.norm();
  const double sigma = nu * nv;
  if (sigma == 0.0 || sigma <= 0.5 * tol * std::max(1.0, sigma)) return {};
  const double budget = 0.25 * tol * std::max(1.0, sigma);
  const Index p = std::max<Index>(1, trailing_cut(un * nv, budget));
  const Index q = std::max<Index>(1, trailing_cut(vn * nu, budget));
  return {e.u.topRows(p), e.v.topRows(q)};
}

}  // namespace

Correction::Correction(Matrix u_factor, Matrix v_factor)
    : u(std::move(u_factor)), v(std::move(v_factor)) {
  if (u.cols() != v.cols()) {
    throw Error(ErrorKind::SizeMismatch, "correction factors have different column counts");
  }
}

Correction Correction::from_dense(const Matrix& block, double tol) {
  if (block.size() == 0) return {};
  const ThinSvd svd = thin_svd(block);
  const auto& s = svd.s;
  Index r = 0;
  const double cut = tol * (s.size() ? s(0) : 0.0);
  while (r < s.size() && s(r) > cut && s(r) > 0.0) ++r;
  if (r == 0) return {};
  Matrix u = svd.u.leftCols(r) * s.head(r).asDiagonal();
  Matrix v = svd.v.leftCols(r).conjugate();
  return {std::move(u), std::move(v)};
}

Correction Correction::unit(Index i, Index j, cplx value) {
  Matrix u = Matrix::Zero(i + 1, 1);
  Matrix v = Matrix::Zero(j + 1, 1);
  u(i, 0) = value;
  v(j, 0) = 1.0;
  return {std::move(u), std::move(v)};
}

Matrix Correction::dense() const { return dense(rows(), cols()); }

Matrix Correction::dense(Index p, Index q) const {
  Matrix out = Matrix::Zero(p, q);
  const Index pr = std::min(p, rows());
  const Index qc = std::min(q, cols());
  if (pr > 0 && qc > 0 && rank() > 0) {
    out.topLeftCorner(pr, qc).noalias() = u.topRows(pr) * v.topRows(qc).transpose();
  }
  return out;
}

cplx Correction::entry(Index i, Index j) const {
  if (i >= rows() || j >= cols() || rank() == 0) return {};
  return u.row(i).cwiseProduct(v.row(j)).sum();
}

Correction Correction::scaled(cplx s) const {
  if (s == cplx{} || is_zero()) return {};
  return {u * s, v};
}

Correction Correction::padded(Index p, Index q) const {
  return {pad_rows(u, std::max(p, rows())), pad_rows(v, std::max(q, cols()))};
}

Matrix pad_rows(const Matrix& m, Index rows) {
  if (m.rows() == rows) return m;
  Matrix out = Matrix::Zero(rows, m.cols());
  const Index n = std::min(rows, m.rows());
  out.topRows(n) = m.topRows(n);
  return out;
}

Correction corr_add(const Correction& e1, const Correction& e2, cplx scale2) {
  if (e2.is_zero() || scale2 == cplx{}) return e1;
  if (e1.is_zero()) return e2.scaled(scale2);
  const Index p = std::max(e1.rows(), e2.rows());
  const Index q = std::max(e1.cols(), e2.cols());
  Matrix u(p, e1.rank() + e2.rank());
  Matrix v(q, e1.rank() + e2.rank());
  u << pad_rows(e1.u, p), pad_rows(e2.u, p) * scale2;
  v << pad_rows(e1.v, q), pad_rows(e2.v, q);
  return {std::move(u), std::move(v)};
}

Correction corr_compress(const Correction& e, double tol) {
  if (e.is_zero()) return {};
  if (e.rank() == 1) return compress_rank_one(e, tol);

  const Index p = e.rows(), q = e.cols();
  const Index k1 = std::min(p, e.rank());
  const Index k2 = std::min(q, e.rank());
  Eigen::HouseholderQR<Matrix> qr1(e.u);
  Eigen::HouseholderQR<Matrix> qr2(e.v);
  const Matrix core = thin_r(qr1, k1) * thin_r(qr2, k2).transpose();
  const ThinSvd svd = thin_svd(core);
  const Eigen::VectorXd& s = svd.s;
  if (s.size() == 0 || s(0) == 0.0) return {};

  const double scale = std::max(1.0, s(0));
  Index r = s.size();
  double tail = 0.0;
  const double rank_budget = 0.5 * tol * scale;
  while (r > 0 && tail + s(r - 1) * s(r - 1) <= rank_budget * rank_budget) {
    tail += s(r - 1) * s(r - 1);
    --r;
  }
  if (r == 0) return {};

  // Orthonormal representation E = (Q1 W) S (Q2 conj Z)^T.
  const Matrix left = thin_q(qr1, k1) * svd.u.leftCols(r);
  const Matrix right = thin_q(qr2, k2) * svd.v.leftCols(r).conjugate();
  const auto sr = s.head(r).asDiagonal();
  Matrix u = left * sr;
  const Eigen::VectorXd row_mass = u.rowwise().norm();
  const Eigen::VectorXd col_mass = (right * sr).rowwise().norm();
  const double trim_budget = 0.25 * tol * scale;
  const Index pn = std::max<Index>(1, trailing_cut(row_mass, trim_budget));
  const Index qn = std::max<Index>(1, trailing_cut(col_mass, trim_budget));
  return {u.topRows(pn), right.topRows(qn)};
}

double abs_sum_norm(const Correction& e) {
  if (e.is_zero()) return 0.0;
  double total = 0.0;
  for (Index i = 0; i < e.rows(); i += kRowChunk) {
    const Index n = std::min(kRowChunk, e.rows() - i);
    total += (e.u.middleRows(i, n) * e.v.transpose()).cwiseAbs().sum();
  }
  return total;
}

double max_abs_entry(const Correction& e) {
  if (e.is_zero()) return 0.0;
  double best = 0.0;
  for (Index i = 0; i < e.rows(); i += kRowChunk) {
    const Index n = std::min(kRowChunk, e.rows() - i);
    best = std::max(best, (e.u.middleRows(i, n) * e.v.transpose()).cwiseAbs().maxCoeff());
  }
  return best;
}

Matrix hankel_block(const LaurentSymbol& one_sided, Index rows, Index cols) {
  Matrix h = Matrix::Zero(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) h(i, j) = one_sided.coeff(static_cast<int>(i + j + 1));
  }
  return h;
}

Correction hankel_product(const LaurentSymbol& a_minus, const LaurentSymbol& b_plus) {
  if (a_minus.is_zero() || b_plus.is_zero()) return {};
  const Index na = std::max(0, a_minus.max_deg());
  const Index nb = std::max(0, b_plus.max_deg());
  const Index s = std::min(na, nb);
  if (s == 0) return {};
  return {hankel_block(a_minus, na, s), hankel_block(b_plus, nb, s)};
}

Matrix toeplitz_times(const LaurentSymbol& a, const Matrix& u, Index max_rows) {
  const Index p = u.rows();
  Index rows = p + a.neg_extent();
  if (max_rows >= 0) rows = std::min(rows, max_rows);
  Matrix out = Matrix::Zero(rows, u.cols());
  if (p == 0 || a.is_zero()) return out;
  // (T(a) U)_i = sum_d a_d U_{i+d}.
  for (int d = a.min_deg(); d <= a.max_deg(); ++d) {
    const cplx c = a.coeff(d);
    if (c == cplx{}) continue;
    const Index i0 = std::max<Index>(0, -d);
    const Index i1 = std::min<Index>(rows, p - d);
    if (i1 <= i0) continue;
    out.middleRows(i0, i1 - i0) += c * u.middleRows(i0 + d, i1 - i0);
  }
  return out;
}

Correction corr_times_toeplitz(const Correction& e, const LaurentSymbol& b, Index max_cols) {
  if (e.is_zero() || b.is_zero()) return {};
  return {e.u, toeplitz_times(b.reversed(), e.v, max_cols)};
}

Correction toeplitz_times_corr(const LaurentSymbol& a, const Correction& e, Index max_rows) {
  if (e.is_zero() || a.is_zero()) return {};
  return {toeplitz_times(a, e.u, max_rows), e.v};
}

Correction corr_mul(const Correction& e1, const Correction& e2) {
  if (e1.is_zero() || e2.is_zero()) return {};
  const Index k = std::min(e1.cols(), e2.rows());
  const Matrix inner = e1.v.topRows(k).transpose() * e2.u.topRows(k);
  return {e1.u * inner, e2.v};
}

Correction corr_from_block(const Matrix& x, double tol) {
  if (x.size() == 0) return {};
  const Eigen::MatrixXd mag = x.cwiseAbs();
  const double scale = std::max(1.0, mag.maxCoeff());
  const double drop = tol * scale / static_cast<double>(std::max(x.rows(), x.cols()));
  const Eigen::VectorXd row_max = mag.rowwise().maxCoeff();
  const Eigen::VectorXd col_max = mag.colwise().maxCoeff().transpose();
  Index p = x.rows(), q = x.cols();
  while (p > 0 && row_max(p - 1) <= drop) --p;
  while (q > 0 && col_max(q - 1) <= drop) --q;
  if (p == 0 || q == 0) return {};
  return corr_compress(Correction::from_dense(x.topLeftCorner(p, q), tol), tol);
}

Correction corr_clip(const Correction& e, Index p, Index q) {
  if (e.is_zero() || p <= 0 || q <= 0) return {};
  return {e.u.topRows(std::min(p, e.rows())), e.v.topRows(std::min(q, e.cols()))};
}

}  // namespace cqt
