#pragma once

#include <concepts>

#include "cqt/cqt_matrix.hpp"
#include "cqt/finite_qt.hpp"

namespace cqt {

// Uniform vocabulary over the semi-infinite and the finite algebra, used by
// the matrix-function engines.

inline CqtMatrix identity_like(const CqtMatrix&) { return CqtMatrix::identity(); }
inline FiniteQtMatrix identity_like(const FiniteQtMatrix& a) { return FiniteQtMatrix::identity(a.m); }

inline CqtMatrix zero_like(const CqtMatrix&) { return CqtMatrix::zero(); }
inline FiniteQtMatrix zero_like(const FiniteQtMatrix& a) { return FiniteQtMatrix::zero(a.m); }

inline CqtMatrix plus(const CqtMatrix& a, const CqtMatrix& b, const ToleranceConfig& cfg,
                      cplx scale_b = 1.0) {
  return cqt_add(a, b, cfg, scale_b);
}
inline FiniteQtMatrix plus(const FiniteQtMatrix& a, const FiniteQtMatrix& b,
                           const ToleranceConfig& cfg, cplx scale_b = 1.0) {
  return fqt_add(a, b, cfg, scale_b);
}

inline CqtMatrix times(const CqtMatrix& a, const CqtMatrix& b, const ToleranceConfig& cfg) {
  return cqt_mul(a, b, cfg);
}
inline FiniteQtMatrix times(const FiniteQtMatrix& a, const FiniteQtMatrix& b,
                            const ToleranceConfig& cfg) {
  return fqt_mul(a, b, cfg);
}

inline CqtMatrix scaled(const CqtMatrix& a, cplx s) { return cqt_scale(a, s); }
inline FiniteQtMatrix scaled(const FiniteQtMatrix& a, cplx s) { return fqt_scale(a, s); }

inline CqtMatrix inverse(const CqtMatrix& a, const ToleranceConfig& cfg) { return cqt_inv(a, cfg); }
inline FiniteQtMatrix inverse(const FiniteQtMatrix& a, const ToleranceConfig& cfg) {
  return fqt_inv(a, cfg);
}

inline double algebra_norm(const CqtMatrix& a) { return cqt_norm(a); }
inline double algebra_norm(const FiniteQtMatrix& a) { return fqt_norm(a); }

inline const LaurentSymbol& symbol_of(const CqtMatrix& a) { return a.symbol; }
inline const LaurentSymbol& symbol_of(const FiniteQtMatrix& a) { return a.symbol; }

inline CqtMatrix with_symbol(CqtMatrix a, LaurentSymbol s) {
  a.symbol = std::move(s);
  return a;
}
inline FiniteQtMatrix with_symbol(FiniteQtMatrix a, const LaurentSymbol& s) {
  const int r = static_cast<int>(a.m) - 1;
  a.symbol = s.clipped(-r, r);
  return a;
}

inline CqtMatrix correction_only(const CqtMatrix& a) { return {{}, a.corr}; }
inline FiniteQtMatrix correction_only(const FiniteQtMatrix& a) { return {a.m, {}, a.tl, a.br}; }

/// Largest correction footprint: (rows, columns, rank) over all corners.
struct CorrectionShape {
  Index rows = 0;
  Index cols = 0;
  Index rank = 0;
};
inline CorrectionShape correction_shape(const CqtMatrix& a) {
  return {a.corr.rows(), a.corr.cols(), a.corr.rank()};
}
inline CorrectionShape correction_shape(const FiniteQtMatrix& a) {
  return {std::max(a.tl.rows(), a.br.rows()), std::max(a.tl.cols(), a.br.cols()),
          std::max(a.tl.rank(), a.br.rank())};
}

template <class T>
concept QtAlgebra = requires(const T& a, const T& b, const ToleranceConfig& cfg, cplx s) {
  { identity_like(a) } -> std::same_as<T>;
  { zero_like(a) } -> std::same_as<T>;
  { plus(a, b, cfg, s) } -> std::same_as<T>;
  { times(a, b, cfg) } -> std::same_as<T>;
  { scaled(a, s) } -> std::same_as<T>;
  { inverse(a, cfg) } -> std::same_as<T>;
  { algebra_norm(a) } -> std::convertible_to<double>;
  { symbol_of(a) } -> std::convertible_to<const LaurentSymbol&>;
  { with_symbol(a, LaurentSymbol{}) } -> std::same_as<T>;
  { correction_only(a) } -> std::same_as<T>;
};

static_assert(QtAlgebra<CqtMatrix>);
static_assert(QtAlgebra<FiniteQtMatrix>);

}  // namespace cqt
