#pragma once

#include "cqt/config.hpp"
#include "cqt/symbol.hpp"

namespace cqt {

using Index = Eigen::Index;

/// Low-rank finite-support correction E = U V^T, i.e. a semi-infinite matrix
/// whose leading p x q block is U V^T (plain transpose) and which vanishes
/// elsewhere.  U is p x r, V is q x r.
struct Correction {
  Matrix u;
  Matrix v;

  Correction() = default;
  Correction(Matrix u_factor, Matrix v_factor);

  static Correction zero() { return {}; }
  /// Exact factorization of a dense block (SVD, numerically zero directions
  /// dropped at `tol` relative to the largest singular value).
  static Correction from_dense(const Matrix& block, double tol = 0.0);
  static Correction unit(Index i, Index j, cplx value = 1.0);

  Index rows() const noexcept { return u.rows(); }
  Index cols() const noexcept { return v.rows(); }
  Index rank() const noexcept { return u.cols(); }
  bool is_zero() const noexcept { return rank() == 0 || rows() == 0 || cols() == 0; }

  Matrix dense() const;
  /// Leading p x q block of the semi-infinite matrix (zero padded or clipped).
  Matrix dense(Index p, Index q) const;
  cplx entry(Index i, Index j) const;

  Correction scaled(cplx s) const;
  /// Same operator with factors zero padded (never clipped) to p and q rows.
  Correction padded(Index p, Index q) const;
};

/// e1 + scale2 * e2 by padding to common sizes and concatenating columns.
Correction corr_add(const Correction& e1, const Correction& e2, cplx scale2 = 1.0);

/// Rank and support reduction.  The Frobenius norm of the discarded part is
/// at most tol * max(1, sigma_1), which bounds the entrywise-sum norm of the
/// loss by tol * sqrt(p q) * max(1, ||e||).
Correction corr_compress(const Correction& e, double tol);

/// Sum of |entries| of the leading block, materialized a row block at a time.
double abs_sum_norm(const Correction& e);
/// Largest |entry|.
double max_abs_entry(const Correction& e);

/// H(a^-) H(b^+) in factored form; a_minus and b_plus hold the coefficients
/// of z^i, i >= 1, as produced by sym_split.
Correction hankel_product(const LaurentSymbol& a_minus, const LaurentSymbol& b_plus);

/// Dense Hankel block with entries h_ij = s_{i+j+1} (0-based), rows x cols.
Matrix hankel_block(const LaurentSymbol& one_sided, Index rows, Index cols);

/// T(a) * U for a tall factor U whose rows beyond U.rows() are zero.  The
/// result has U.rows() + n_-(a) rows, clipped to max_rows when given.
Matrix toeplitz_times(const LaurentSymbol& a, const Matrix& u, Index max_rows = -1);

/// e * T(b) = U (T(b~) V)^T with b~(z) = b(1/z).
Correction corr_times_toeplitz(const Correction& e, const LaurentSymbol& b,
                               Index max_cols = -1);
/// T(a) * e.
Correction toeplitz_times_corr(const LaurentSymbol& a, const Correction& e,
                               Index max_rows = -1);

/// e1 * e2 = U1 (V1^T U2) V2^T over the common inner support.
Correction corr_mul(const Correction& e1, const Correction& e2);

/// Dense block -> compressed factors.  Trailing rows and columns whose
/// entries are all below tol * max(1, max|x|) / max(p, q) are cut first so the
/// SVD only sees the numerical support.
Correction corr_from_block(const Matrix& x, double tol);

/// Restriction to the leading p x q block.
Correction corr_clip(const Correction& e, Index p, Index q);

/// Matrix with rows zero padded (or kept) to `rows`.
Matrix pad_rows(const Matrix& m, Index rows);

}  // namespace cqt
