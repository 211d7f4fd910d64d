#pragma once

#include "cqt/config.hpp"
#include "cqt/correction.hpp"
#include "cqt/symbol.hpp"

namespace cqt {

/// m x m quasi-Toeplitz matrix T_m(a) + E_tl + J E_br J, J the flip.
///
/// The bottom-right correction is stored flipped, as the top-left correction
/// of J A J, so both corners share one code path.  Flipping the whole matrix
/// maps (a, tl, br) to (a(1/z), br, tl).
struct FiniteQtMatrix {
  Index m = 0;
  LaurentSymbol symbol;  // degrees within [-(m-1), m-1]
  Correction tl;
  Correction br;

  static FiniteQtMatrix identity(Index m);
  static FiniteQtMatrix zero(Index m);
  static FiniteQtMatrix toeplitz(Index m, const LaurentSymbol& a);

  bool is_zero() const noexcept { return symbol.is_zero() && tl.is_zero() && br.is_zero(); }
  bool is_identity() const;
  FiniteQtMatrix flipped() const;
};

struct FiniteMulStats {
  bool overlap = false;    // corner supports of an operand cover a common entry
  int cross_terms = 0;     // products E_tl J E_br J materialized
  Index max_support = 0;   // largest corner row/column support of the result
};

FiniteQtMatrix fqt_add(const FiniteQtMatrix& a, const FiniteQtMatrix& b, const ToleranceConfig& cfg,
                       cplx scale_b = 1.0);
FiniteQtMatrix fqt_scale(const FiniteQtMatrix& a, cplx s);
FiniteQtMatrix fqt_mul(const FiniteQtMatrix& a, const FiniteQtMatrix& b, const ToleranceConfig& cfg,
                       FiniteMulStats* stats = nullptr);

struct FiniteInverseReport {
  bool windowed = false;   // banded + capacitance path instead of dense LU
  Index window = 0;        // corner window used by the windowed path
  double residual = 0.0;   // max entry of A X - I over the sampled columns
};

/// Inverse, re-split into band and two corners.  Small sizes use a dense LU;
/// larger ones factor the band (LAPACK zgbtrf) and apply the corners through
/// the capacitance matrix of the low-rank update.
FiniteQtMatrix fqt_inv(const FiniteQtMatrix& a, const ToleranceConfig& cfg,
                       FiniteInverseReport* report = nullptr);

/// ||a||_W + ||a'||_W + corner entrywise sums.
double fqt_norm(const FiniteQtMatrix& a);

Matrix fqt_to_dense(const FiniteQtMatrix& a);
/// Column j of the dense matrix.
Vector fqt_column(const FiniteQtMatrix& a, Index j);
/// A x.
Vector fqt_apply(const FiniteQtMatrix& a, const Vector& x);

/// Structure recovery: the symbol is read off the central entries of the
/// diagonals |d| <= band (band < 0: every diagonal), the remainder is split
/// along the antidiagonal into the two corners and factored.
FiniteQtMatrix fqt_from_dense(const Matrix& dense, Index band, const ToleranceConfig& cfg);

/// True when the two corners of `a` share an entry.
bool corners_overlap(const FiniteQtMatrix& a);

}  // namespace cqt
