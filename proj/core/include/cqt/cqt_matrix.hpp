#pragma once

#include "cqt/config.hpp"
#include "cqt/correction.hpp"
#include "cqt/symbol.hpp"

namespace cqt {

/// Semi-infinite quasi-Toeplitz matrix T(a) + E.
struct CqtMatrix {
  LaurentSymbol symbol;
  Correction corr;

  static CqtMatrix identity() { return {LaurentSymbol::constant(1.0), {}}; }
  static CqtMatrix zero() { return {}; }
  static CqtMatrix toeplitz(LaurentSymbol a) { return {std::move(a), {}}; }

  bool is_zero() const noexcept { return symbol.is_zero() && corr.is_zero(); }
  bool is_identity() const;
};

CqtMatrix cqt_add(const CqtMatrix& a, const CqtMatrix& b, const ToleranceConfig& cfg,
                  cplx scale_b = 1.0);
CqtMatrix cqt_scale(const CqtMatrix& a, cplx s);
CqtMatrix cqt_mul(const CqtMatrix& a, const CqtMatrix& b, const ToleranceConfig& cfg);

struct InverseReport {
  Index certified_n = 0;   // section size on which the residual was measured
  double residual = 0.0;   // entrywise max of A inv(A) - I
  Index sections_tried = 0;
};

/// Inverse by adaptive finite sections: the Toeplitz part is T(1/a), the
/// correction is read off the leading half of inv(S_N) - T_N(1/a) and the
/// result is certified by an exact product residual.
CqtMatrix cqt_inv(const CqtMatrix& a, const ToleranceConfig& cfg,
                  InverseReport* report = nullptr);

double cqt_norm(const CqtMatrix& a);
double qt_norm(const CqtMatrix& a);

/// Leading n x n block of a dense Toeplitz matrix T(a).
Matrix toeplitz_section(const LaurentSymbol& a, Index rows, Index cols);
/// Leading n x n block of T(a) + E.
Matrix finite_section(const CqtMatrix& a, Index n);
Matrix finite_section(const CqtMatrix& a, Index rows, Index cols);

/// Largest |entry| of A B - I, computed exactly from dense sections large
/// enough to contain every non-Toeplitz entry, plus the Toeplitz remainder.
double product_residual(const CqtMatrix& a, const CqtMatrix& b, Index* section = nullptr);

}  // namespace cqt
