#include "cqt/finite_qt.hpp"

#include <lapacke.h>

#include <Eigen/LU>
#include <algorithm>
#include <set>

#include "cqt/error.hpp"

namespace cqt {
namespace {

constexpr Index kDenseInverseLimit = 512;
constexpr double kSingularRcond = 1e-13;
constexpr int kSampledColumns = 20;

void require_same_size(const FiniteQtMatrix& a, const FiniteQtMatrix& b) {
  if (a.m != b.m) {
    throw Error(ErrorKind::SizeMismatch,
                "sizes " + std::to_string(a.m) + " and " + std::to_string(b.m) + " differ");
  }
}

LaurentSymbol band_clip(const LaurentSymbol& a, Index m) {
  const int r = static_cast<int>(m) - 1;
  return a.clipped(-r, r);
}

// J * pad_m(f): rows reversed within a frame of m rows.
Matrix flip_padded(const Matrix& f, Index m) { return pad_rows(f, m).colwise().reverse(); }

Matrix flip_both(const Matrix& x) { return x.reverse(); }

// Near-corner correction of the product A B, where "near" is the top-left
// corner of both operands and "far" the bottom-right (flipped) one:
//   -H(a^-)H(b^+) + T_m(a) Eb + Ea T_m(b) + Ea Eb + Ea J Eb_far J.
Correction corner_product(const LaurentSymbol& a, const Correction& a_near,
                          const LaurentSymbol& b, const Correction& b_near,
                          const Correction& b_far, Index m, FiniteMulStats& stats) {
  const Correction h = hankel_product(sym_split(a).minus, sym_split(b).plus);
  Correction e = corr_clip(h, m, m).scaled(-1.0);
  e = corr_add(e, toeplitz_times_corr(a, b_near, m));
  e = corr_add(e, corr_times_toeplitz(a_near, b, m));
  e = corr_add(e, corr_mul(a_near, b_near));
  if (!a_near.is_zero() && !b_far.is_zero() && a_near.cols() + b_far.rows() > m) {
    const Matrix inner = pad_rows(a_near.v, m).transpose() * flip_padded(b_far.u, m);
    e = corr_add(e, Correction(a_near.u * inner, flip_padded(b_far.v, m)));
    ++stats.cross_terms;
  }
  return e;
}

// Splits a dense remainder along the antidiagonal: entries with i + j < m - 1
// go to the top-left corner, i + j > m - 1 to the bottom-right, the
// antidiagonal itself is shared half and half.  The split commutes with J.
std::pair<Correction, Correction> split_corners(const Matrix& r, double tol) {
  const Index m = r.rows();
  Matrix near = Matrix::Zero(m, m);
  Matrix far = Matrix::Zero(m, m);
  const Matrix rf = flip_both(r);
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i + j < m; ++i) {
      const double w = (i + j == m - 1) ? 0.5 : 1.0;
      near(i, j) = w * r(i, j);
      far(i, j) = w * rf(i, j);
    }
  }
  return {corr_from_block(near, tol), corr_from_block(far, tol)};
}

// Toeplitz profile read from the two central columns c = m/2 and c2 = m-1-c,
// averaged so that extraction commutes with the flip.
LaurentSymbol central_symbol(const Vector& col_c, const Vector& col_c2, Index band) {
  const Index m = col_c.size();
  const Index c = m / 2;
  const Index c2 = m - 1 - c;
  const Index lo = std::max(-(m - 1), -band);
  const Index hi = std::min(m - 1, band);
  std::vector<cplx> coeffs;
  coeffs.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (Index d = lo; d <= hi; ++d) {
    cplx sum{};
    int n = 0;
    if (const Index i = c - d; i >= 0 && i < m) {
      sum += col_c(i);
      ++n;
    }
    if (const Index i = c2 - d; i >= 0 && i < m) {
      sum += col_c2(i);
      ++n;
    }
    coeffs.push_back(n ? sum / static_cast<double>(n) : cplx{});
  }
  return {static_cast<int>(lo), std::move(coeffs)};
}

// Profile from the central entry (or the mean of the two central entries)
// of every diagonal |d| <= band.  Exact on Toeplitz input, flip-invariant.
LaurentSymbol central_symbol(const Matrix& x, Index band) {
  const Index m = x.rows();
  const Index lo = std::max(-(m - 1), -band);
  const Index hi = std::min(m - 1, band);
  std::vector<cplx> coeffs;
  coeffs.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (Index d = lo; d <= hi; ++d) {
    const Index len = m - std::abs(d);
    const Index i0 = std::max<Index>(0, -d);
    const Index a = i0 + (len - 1) / 2, b = i0 + len / 2;
    coeffs.push_back(0.5 * (x(a, a + d) + x(b, b + d)));
  }
  return {static_cast<int>(lo), std::move(coeffs)};
}

// Columns of T_m(a) restricted to [j0, j0 + k).
Matrix toeplitz_columns(const LaurentSymbol& a, Index m, Index j0, Index k) {
  Matrix t = Matrix::Zero(m, k);
  for (int d = a.min_deg(); d <= a.max_deg(); ++d) {
    for (Index jj = 0; jj < k; ++jj) {
      const Index i = j0 + jj - d;
      if (i >= 0 && i < m) t(i, jj) = a.coeff(d);
    }
  }
  return t;
}

std::vector<Index> sample_columns(Index m) {
  std::set<Index> cols{0, m - 1, m / 2};
  if (m > 1) {
    cols.insert(1);
    cols.insert(m - 2);
  }
  for (int k = 0; k < kSampledColumns; ++k) cols.insert((k * (m - 1)) / (kSampledColumns - 1));
  return {cols.begin(), cols.end()};
}

double sampled_residual(const FiniteQtMatrix& a, const FiniteQtMatrix& x) {
  double worst = 0.0;
  for (Index j : sample_columns(a.m)) {
    Vector r = fqt_apply(a, fqt_column(x, j));
    r(j) -= 1.0;
    worst = std::max(worst, r.cwiseAbs().maxCoeff());
  }
  return worst;
}

// Banded LU of T_m(a) plus the capacitance solve for the corner update.
class WindowedSolver {
 public:
  WindowedSolver(const FiniteQtMatrix& a) : m_(a.m) {
    kl_ = a.symbol.neg_extent();
    ku_ = a.symbol.pos_extent();
    ldab_ = 2 * kl_ + ku_ + 1;
    ab_.assign(static_cast<std::size_t>(ldab_ * m_), cplx{});
    ipiv_.assign(static_cast<std::size_t>(m_), 0);
    for (int d = a.symbol.min_deg(); d <= a.symbol.max_deg(); ++d) {
      for (Index j = std::max<Index>(0, d); j < m_ && j - d < m_; ++j) {
        const Index i = j - d;
        ab_[static_cast<std::size_t>(kl_ + ku_ + i - j + j * ldab_)] = a.symbol.coeff(d);
      }
    }
    const lapack_int info = LAPACKE_zgbtrf(LAPACK_COL_MAJOR, m_, m_, kl_, ku_,
                                           reinterpret_cast<lapack_complex_double*>(ab_.data()),
                                           ldab_, ipiv_.data());
    if (info != 0) throw Error(ErrorKind::Singular, "banded Toeplitz part is singular");

    const Index r1 = a.tl.rank(), r2 = a.br.rank();
    u_ = Matrix::Zero(m_, r1 + r2);
    v_ = Matrix::Zero(m_, r1 + r2);
    if (r1 > 0) {
      u_.leftCols(r1) = pad_rows(a.tl.u, m_);
      v_.leftCols(r1) = pad_rows(a.tl.v, m_);
    }
    if (r2 > 0) {
      u_.rightCols(r2) = flip_padded(a.br.u, m_);
      v_.rightCols(r2) = flip_padded(a.br.v, m_);
    }
    if (u_.cols() > 0) {
      y_ = band_solve(u_);
      cap_.compute(Matrix::Identity(u_.cols(), u_.cols()) + v_.transpose() * y_);
      if (!(cap_.rcond() > kSingularRcond)) {
        throw Error(ErrorKind::Singular, "capacitance matrix of the corner update is singular");
      }
    }
  }

  Matrix solve(const Matrix& rhs) const {
    Matrix x = band_solve(rhs);
    if (u_.cols() > 0) x -= y_ * cap_.solve(v_.transpose() * x);
    return x;
  }

  Matrix unit_columns(Index j0, Index k) const {
    Matrix e = Matrix::Zero(m_, k);
    for (Index jj = 0; jj < k; ++jj) e(j0 + jj, jj) = 1.0;
    return solve(e);
  }

 private:
  Matrix band_solve(const Matrix& rhs) const {
    Matrix x = rhs;
    const lapack_int info = LAPACKE_zgbtrs(
        LAPACK_COL_MAJOR, 'N', m_, kl_, ku_, static_cast<lapack_int>(x.cols()),
        reinterpret_cast<const lapack_complex_double*>(ab_.data()), ldab_, ipiv_.data(),
        reinterpret_cast<lapack_complex_double*>(x.data()), m_);
    if (info != 0) throw Error(ErrorKind::Singular, "banded solve failed");
    return x;
  }

  lapack_int m_, kl_, ku_, ldab_;
  std::vector<cplx> ab_;
  std::vector<lapack_int> ipiv_;
  Matrix u_, v_, y_;
  Eigen::PartialPivLU<Matrix> cap_;
};

FiniteQtMatrix inverse_dense(const FiniteQtMatrix& a, const ToleranceConfig& cfg) {
  Eigen::PartialPivLU<Matrix> lu(fqt_to_dense(a));
  if (!(lu.rcond() > kSingularRcond)) throw Error(ErrorKind::Singular, "matrix is numerically singular");
  const Matrix x = lu.inverse();
  FiniteQtMatrix out;
  out.m = a.m;
  out.symbol = sym_truncate(central_symbol(x, a.m - 1), cfg.tol_symbol);
  auto [tl, br] = split_corners(x - fqt_to_dense(FiniteQtMatrix::toeplitz(a.m, out.symbol)),
                                cfg.tol_corr);
  out.tl = std::move(tl);
  out.br = std::move(br);
  return out;
}

// Returns false when no window up to m/2 isolates the corners.
bool inverse_windowed(const FiniteQtMatrix& a, const ToleranceConfig& cfg, FiniteQtMatrix& out,
                      Index& window) {
  const Index m = a.m;
  const WindowedSolver solver(a);
  const Index c = m / 2, c2 = m - 1 - c;
  const Matrix cols = solver.unit_columns(c2, c - c2 + 1);
  const LaurentSymbol b =
      sym_truncate(central_symbol(cols.col(cols.cols() - 1), cols.col(0), m - 1), cfg.tol_symbol);
  const double scale = std::max(1.0, wiener_norms(b).norm_w);

  Index start = 2 * (std::max({a.tl.rows(), a.tl.cols(), a.br.rows(), a.br.cols()}) +
                     a.symbol.neg_extent() + a.symbol.pos_extent());
  for (Index k = std::max<Index>(64, start); k <= m / 2; k *= 2) {
    const Matrix left = solver.unit_columns(0, k) - toeplitz_columns(b, m, 0, k);
    const Matrix right = flip_both(solver.unit_columns(m - k, k) - toeplitz_columns(b, m, m - k, k));
    auto tail = [k](const Matrix& r) {
      return std::max(r.bottomRows(r.rows() - k / 2).cwiseAbs().maxCoeff(),
                      r.rightCols(k - k / 2).cwiseAbs().maxCoeff());
    };
    if (std::max(tail(left), tail(right)) > cfg.tol_stop * scale) continue;
    out.m = m;
    out.symbol = b;
    out.tl = corr_from_block(left.topRows(k), cfg.tol_corr);
    out.br = corr_from_block(right.topRows(k), cfg.tol_corr);
    window = k;
    return true;
  }
  return false;
}

}  // namespace

FiniteQtMatrix FiniteQtMatrix::identity(Index m) { return toeplitz(m, LaurentSymbol::constant(1.0)); }

FiniteQtMatrix FiniteQtMatrix::zero(Index m) {
  FiniteQtMatrix z;
  z.m = m;
  return z;
}

FiniteQtMatrix FiniteQtMatrix::toeplitz(Index m, const LaurentSymbol& a) {
  FiniteQtMatrix t;
  t.m = m;
  t.symbol = band_clip(a, m);
  return t;
}

bool FiniteQtMatrix::is_identity() const {
  return tl.is_zero() && br.is_zero() && symbol == LaurentSymbol::constant(1.0);
}

FiniteQtMatrix FiniteQtMatrix::flipped() const { return {m, symbol.reversed(), br, tl}; }

bool corners_overlap(const FiniteQtMatrix& a) {
  if (a.tl.is_zero() || a.br.is_zero()) return false;
  return a.tl.rows() + a.br.rows() > a.m && a.tl.cols() + a.br.cols() > a.m;
}

FiniteQtMatrix fqt_add(const FiniteQtMatrix& a, const FiniteQtMatrix& b, const ToleranceConfig& cfg,
                       cplx scale_b) {
  require_same_size(a, b);
  if (b.is_zero() || scale_b == cplx{}) return a;
  if (a.is_zero()) return fqt_scale(b, scale_b);
  return {a.m, sym_truncate(a.symbol + scale_b * b.symbol, cfg.tol_symbol),
          corr_compress(corr_add(a.tl, b.tl, scale_b), cfg.tol_corr),
          corr_compress(corr_add(a.br, b.br, scale_b), cfg.tol_corr)};
}

FiniteQtMatrix fqt_scale(const FiniteQtMatrix& a, cplx s) {
  if (s == cplx{}) return FiniteQtMatrix::zero(a.m);
  return {a.m, s * a.symbol, a.tl.scaled(s), a.br.scaled(s)};
}

FiniteQtMatrix fqt_mul(const FiniteQtMatrix& a, const FiniteQtMatrix& b, const ToleranceConfig& cfg,
                       FiniteMulStats* stats) {
  require_same_size(a, b);
  FiniteMulStats local;
  FiniteMulStats& st = stats != nullptr ? *stats : local;
  st = {};
  st.overlap = corners_overlap(a) || corners_overlap(b);
  const Index m = a.m;
  if (a.is_zero() || b.is_zero()) return FiniteQtMatrix::zero(m);
  if (a.is_identity()) return b;
  if (b.is_identity()) return a;

  // The bottom-right corner is the top-left corner of (JAJ)(JBJ).
  const LaurentSymbol ar = a.symbol.reversed(), br = b.symbol.reversed();
  Correction tl = corner_product(a.symbol, a.tl, b.symbol, b.tl, b.br, m, st);
  Correction bottom = corner_product(ar, a.br, br, b.br, b.tl, m, st);

  FiniteQtMatrix out{m, sym_truncate(band_clip(sym_mul(a.symbol, b.symbol), m), cfg.tol_symbol),
                     corr_clip(corr_compress(tl, cfg.tol_corr), m, m),
                     corr_clip(corr_compress(bottom, cfg.tol_corr), m, m)};
  st.overlap = st.overlap || corners_overlap(out);
  st.max_support = std::max({out.tl.rows(), out.tl.cols(), out.br.rows(), out.br.cols()});
  return out;
}

double fqt_norm(const FiniteQtMatrix& a) {
  const auto n = wiener_norms(a.symbol);
  return n.norm_w + n.norm_w1 + abs_sum_norm(a.tl) + abs_sum_norm(a.br);
}

Matrix fqt_to_dense(const FiniteQtMatrix& a) {
  Matrix d = Matrix::Zero(a.m, a.m);
  for (int k = a.symbol.min_deg(); k <= a.symbol.max_deg(); ++k) {
    const cplx c = a.symbol.coeff(k);
    if (c == cplx{}) continue;
    for (Index i = std::max<Index>(0, -k); i < a.m && i + k < a.m; ++i) d(i, i + k) = c;
  }
  d += a.tl.dense(a.m, a.m);
  d += flip_both(a.br.dense(a.m, a.m));
  return d;
}

Vector fqt_column(const FiniteQtMatrix& a, Index j) {
  const Index m = a.m;
  Vector col = Vector::Zero(m);
  for (int d = a.symbol.min_deg(); d <= a.symbol.max_deg(); ++d) {
    const Index i = j - d;
    if (i >= 0 && i < m) col(i) += a.symbol.coeff(d);
  }
  if (!a.tl.is_zero() && j < a.tl.cols()) {
    col.head(a.tl.rows()) += a.tl.u * a.tl.v.row(j).transpose();
  }
  const Index jf = m - 1 - j;
  if (!a.br.is_zero() && jf < a.br.cols()) {
    const Vector part = a.br.u * a.br.v.row(jf).transpose();
    for (Index i = 0; i < part.size(); ++i) col(m - 1 - i) += part(i);
  }
  return col;
}

Vector fqt_apply(const FiniteQtMatrix& a, const Vector& x) {
  const Index m = a.m;
  if (x.size() != m) throw Error(ErrorKind::SizeMismatch, "vector length differs from matrix size");
  Vector y = Vector::Zero(m);
  // y_i = sum_d a_d x_{i+d}
  for (int d = a.symbol.min_deg(); d <= a.symbol.max_deg(); ++d) {
    const Index i0 = std::max<Index>(0, -d);
    const Index i1 = std::min<Index>(m, m - d);
    if (i1 > i0) y.segment(i0, i1 - i0) += a.symbol.coeff(d) * x.segment(i0 + d, i1 - i0);
  }
  if (!a.tl.is_zero()) {
    y.head(a.tl.rows()) += a.tl.u * (a.tl.v.transpose() * x.head(a.tl.cols()));
  }
  if (!a.br.is_zero()) {
    const Vector xf = x.reverse().head(a.br.cols());
    const Vector part = a.br.u * (a.br.v.transpose() * xf);
    for (Index i = 0; i < part.size(); ++i) y(m - 1 - i) += part(i);
  }
  return y;
}

FiniteQtMatrix fqt_from_dense(const Matrix& dense, Index band, const ToleranceConfig& cfg) {
  if (dense.rows() != dense.cols()) throw Error(ErrorKind::SizeMismatch, "matrix is not square");
  const Index m = dense.rows();
  if (m == 0) return FiniteQtMatrix::zero(0);
  FiniteQtMatrix out;
  out.m = m;
  out.symbol = central_symbol(dense, band < 0 ? m - 1 : band);
  auto [tl, br] = split_corners(dense - fqt_to_dense(FiniteQtMatrix::toeplitz(m, out.symbol)),
                                cfg.tol_corr);
  out.tl = std::move(tl);
  out.br = std::move(br);
  return out;
}

FiniteQtMatrix fqt_inv(const FiniteQtMatrix& a, const ToleranceConfig& cfg, FiniteInverseReport* report) {
  FiniteInverseReport local;
  FiniteInverseReport& rep = report != nullptr ? *report : local;
  rep = {};
  if (a.m == 0) return a;
  if (a.is_identity()) return a;

  const Index dense_limit = std::min<Index>(cfg.max_finite_section, kDenseInverseLimit);
  FiniteQtMatrix x;
  bool done = false;
  if (a.m > dense_limit) {
    done = inverse_windowed(a, cfg, x, rep.window);
    rep.windowed = done;
    if (!done && a.m > cfg.max_finite_section) {
      throw Error(ErrorKind::NoConvergence,
                  "no corner window isolates the inverse corrections and m exceeds max_finite_section");
    }
  }
  if (!done) x = inverse_dense(a, cfg);

  rep.residual = sampled_residual(a, x);
  if (rep.residual > cfg.tol_stop * std::max(1.0, fqt_norm(a) * fqt_norm(x))) {
    throw Error(ErrorKind::NoConvergence,
                "inverse certificate failed: sampled residual " + std::to_string(rep.residual));
  }
  return x;
}

}  // namespace cqt
