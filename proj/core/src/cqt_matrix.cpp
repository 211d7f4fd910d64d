#include "cqt/cqt_matrix.hpp"

#include <Eigen/LU>
#include <algorithm>

#include "cqt/error.hpp"

namespace cqt {
namespace {

constexpr double kSingularRcond = 1e-13;

Index next_pow2(Index n) {
  Index p = 1;
  while (p < n) p <<= 1;
  return p;
}

double max_coeff_abs(const LaurentSymbol& a) {
  double m = 0.0;
  for (const auto& c : a.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

bool CqtMatrix::is_identity() const {
  return corr.is_zero() && symbol == LaurentSymbol::constant(1.0);
}

CqtMatrix cqt_add(const CqtMatrix& a, const CqtMatrix& b, const ToleranceConfig& cfg,
                  cplx scale_b) {
  if (b.is_zero() || scale_b == cplx{}) return a;
  if (a.is_zero()) return cqt_scale(b, scale_b);
  return {sym_truncate(a.symbol + scale_b * b.symbol, cfg.tol_symbol),
          corr_compress(corr_add(a.corr, b.corr, scale_b), cfg.tol_corr)};
}

CqtMatrix cqt_scale(const CqtMatrix& a, cplx s) {
  if (s == cplx{}) return {};
  return {s * a.symbol, a.corr.scaled(s)};
}

CqtMatrix cqt_mul(const CqtMatrix& a, const CqtMatrix& b, const ToleranceConfig& cfg) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_identity()) return b;
  if (b.is_identity()) return a;

  // E = -H(a^-)H(b^+) + [T(a)Ub + Ua(Va^T Ub)] Vb^T + Ua (T(b~)Va)^T
  const SymbolSplit sa = sym_split(a.symbol);
  const SymbolSplit sb = sym_split(b.symbol);
  const Correction h = hankel_product(sa.minus, sb.plus);

  Correction mid;
  if (!b.corr.is_zero()) {
    Matrix left = toeplitz_times(a.symbol, b.corr.u);
    if (!a.corr.is_zero()) {
      const Correction ea_eb = corr_mul(a.corr, b.corr);
      const Index rows = std::max(left.rows(), ea_eb.rows());
      left = pad_rows(left, rows) + pad_rows(ea_eb.u, rows);
    }
    mid = Correction(std::move(left), b.corr.v);
  }
  const Correction right = corr_times_toeplitz(a.corr, b.symbol);

  Correction e = corr_add(corr_add(h.scaled(-1.0), mid), right);
  return {sym_truncate(sym_mul(a.symbol, b.symbol), cfg.tol_symbol),
          corr_compress(e, cfg.tol_corr)};
}

double cqt_norm(const CqtMatrix& a) {
  const auto n = wiener_norms(a.symbol);
  return n.norm_w + n.norm_w1 + abs_sum_norm(a.corr);
}

double qt_norm(const CqtMatrix& a) {
  return wiener_norms(a.symbol).norm_w + abs_sum_norm(a.corr);
}

Matrix toeplitz_section(const LaurentSymbol& a, Index rows, Index cols) {
  Matrix t = Matrix::Zero(rows, cols);
  for (int d = a.min_deg(); d <= a.max_deg(); ++d) {
    const cplx c = a.coeff(d);
    if (c == cplx{}) continue;
    // Entry (i, i + d).
    for (Index i = std::max<Index>(0, -d); i < rows && i + d < cols; ++i) t(i, i + d) = c;
  }
  return t;
}

Matrix finite_section(const CqtMatrix& a, Index rows, Index cols) {
  return toeplitz_section(a.symbol, rows, cols) + a.corr.dense(rows, cols);
}

Matrix finite_section(const CqtMatrix& a, Index n) { return finite_section(a, n, n); }

double product_residual(const CqtMatrix& a, const CqtMatrix& b, Index* section) {
  // Every non-Toeplitz entry of AB - I lies in the leading nc x nc block.
  const Index rows = std::max({Index{a.symbol.neg_extent()},
                               b.corr.rows() + a.symbol.neg_extent(), a.corr.rows()});
  const Index cols = std::max({Index{b.symbol.pos_extent()}, b.corr.cols(),
                               a.corr.cols() + b.symbol.pos_extent()});
  const Index nc = std::max<Index>(1, std::max(rows, cols));
  const Index inner = std::max(nc + a.symbol.pos_extent(), a.corr.cols()) + 1;
  const Matrix prod = finite_section(a, nc, inner) * finite_section(b, inner, nc) -
                      Matrix::Identity(nc, nc);
  if (section != nullptr) *section = nc;
  const LaurentSymbol rest = sym_mul(a.symbol, b.symbol) - LaurentSymbol::constant(1.0);
  return std::max(prod.cwiseAbs().maxCoeff(), max_coeff_abs(rest));
}

CqtMatrix cqt_inv(const CqtMatrix& a, const ToleranceConfig& cfg, InverseReport* report) {
  const LaurentSymbol b = sym_reciprocal(a.symbol, cfg.tol_symbol);
  InverseReport local;
  InverseReport& rep = report != nullptr ? *report : local;
  rep = {};

  // Triangular Toeplitz: both Hankel products vanish and T(1/a) is exact.
  if (a.corr.is_zero() && (a.symbol.neg_extent() == 0 || a.symbol.pos_extent() == 0)) {
    CqtMatrix out = CqtMatrix::toeplitz(b);
    rep.residual = product_residual(a, out, &rep.certified_n);
    return out;
  }

  const Index support = std::max(a.corr.rows(), a.corr.cols()) +
                        static_cast<Index>(a.symbol.size() + b.size());
  const double threshold_scale = std::max(1.0, wiener_norms(b).norm_w);
  for (Index n = std::max<Index>(64, next_pow2(2 * support)); n <= cfg.max_finite_section;
       n *= 2) {
    ++rep.sections_tried;
    Eigen::PartialPivLU<Matrix> lu(finite_section(a, n));
    if (!(lu.rcond() > kSingularRcond)) {
      throw Error(ErrorKind::SingularSection,
                  "finite section of size " + std::to_string(n) + " is numerically singular");
    }
    // The trailing half carries the truncation artifact of the section; the
    // leading half approximates the operator inverse.
    const Index k = n / 2;
    Matrix x = lu.solve(Matrix::Identity(n, k)).topRows(k);
    x -= toeplitz_section(b, k, k);

    const Index f = k - k / 5;
    const double frame = std::max(x.bottomRows(k - f).cwiseAbs().maxCoeff(),
                                  x.rightCols(k - f).cwiseAbs().maxCoeff());
    if (frame > cfg.tol_stop * threshold_scale) continue;

    CqtMatrix out{b, corr_from_block(x, cfg.tol_corr)};
    rep.residual = product_residual(a, out, &rep.certified_n);
    if (rep.residual <= cfg.tol_stop * std::max(1.0, qt_norm(a) * qt_norm(out))) return out;
  }
  throw Error(ErrorKind::NoConvergence,
              "inverse not certified within max_finite_section = " +
                  std::to_string(cfg.max_finite_section));
}

}  // namespace cqt
