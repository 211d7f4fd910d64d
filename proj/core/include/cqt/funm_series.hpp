#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cqt/algebra.hpp"

namespace cqt {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// f(x) = sum_i f_i x^i, one-sided (power series, disk of radius rho) or
/// two-sided (Laurent series on the annulus r_inner < |x| < r_outer).
struct SeriesSpec {
  std::string name;
  std::function<cplx(int)> coeff;       // f_i; negative i only for Laurent series
  std::function<cplx(cplx)> scalar;     // closed form, empty -> partial sums
  double radius = kInfinity;            // rho
  bool laurent = false;
  double r_inner = 0.0;                 // r_f
  double r_outer = kInfinity;           // R_f
  std::optional<int> degree;            // polynomial: f_i = 0 for i > degree
  std::optional<int> neg_degree;        // Laurent polynomial: f_{-i} = 0 for i > neg_degree

  static SeriesSpec exp();
  /// log(1 + x), rho = 1.
  static SeriesSpec log1p();
  /// sqrt(1 + x) by the binomial series, rho = 1.
  static SeriesSpec sqrt1p();
  static SeriesSpec polynomial(std::vector<cplx> coeffs);
  /// sum_{i=-neg.size()}^{pos.size()-1}, neg[k] the coefficient of x^{-(k+1)}.
  static SeriesSpec laurent_polynomial(std::vector<cplx> pos, std::vector<cplx> neg);

  /// g(t) = sum |f_i| t^i and its derivatives, summed until the terms fall below
  /// 1e-16 of the partial sum.  Requires t < radius.
  double abs_series(double t, int derivative = 0) const;
};

struct SeriesReport {
  int terms = 0;               // K
  int neg_terms = 0;           // Laurent: terms on the negative side
  double norm_a = 0.0;         // ||A||_CQT
  double norm_inv = 0.0;       // Laurent: ||A^{-1}||_CQT
  double tail_estimate = 0.0;  // geometric majorant of the discarded tail
  double gamma = 0.0;          // decay constant estimate (finite rho)
};

/// f(A) = sum_{i<=K} f_i A^i with the Toeplitz part f(a) obtained by
/// evaluation/interpolation on the unit circle and the correction
/// accumulated term by term.  Throws RadiusViolation if ||A||_CQT >= rho and
/// NoConvergence if max_terms is reached.
template <QtAlgebra T>
T funm_taylor(const T& a, const SeriesSpec& f, const ToleranceConfig& cfg,
              SeriesReport* report = nullptr);

/// f_0 I + sum_i (f_i A^i + f_{-i} A^{-i}) for a Laurent series on an annulus.
template <QtAlgebra T>
T funm_laurent(const T& a, const SeriesSpec& f, const ToleranceConfig& cfg,
               SeriesReport* report = nullptr);

/// Corrections of the powers of A = T(a) + E: with E = 0 the list is
/// E_1..E_k with T(a)^i = T(a^i) + E_i; otherwise D_0..D_k with
/// A^i = T(a^i) + D_i.
std::vector<Correction> power_corrections(const LaurentSymbol& a, const Correction& e, int k,
                                          const ToleranceConfig& cfg);

/// Per-power bound on the entrywise-sum norm of D_i (E_i when norm_e = 0).
double power_correction_bound(const LaurentSymbol& a, double norm_e, int i);

/// (1/2) ||a'||_W^2 g''(||a||_W): bound on the correction of f(T(a)).
double bound_correction_toeplitz(const SeriesSpec& f, const LaurentSymbol& a);

/// Bound on the correction of f(T(a) + E), ||E|| = norm_e.  Falls back to
/// the Toeplitz bound for norm_e < 1e-10.
double bound_correction_general(const SeriesSpec& f, const LaurentSymbol& a, double norm_e);

extern template CqtMatrix funm_taylor(const CqtMatrix&, const SeriesSpec&, const ToleranceConfig&,
                                      SeriesReport*);
extern template FiniteQtMatrix funm_taylor(const FiniteQtMatrix&, const SeriesSpec&,
                                           const ToleranceConfig&, SeriesReport*);
extern template CqtMatrix funm_laurent(const CqtMatrix&, const SeriesSpec&, const ToleranceConfig&,
                                       SeriesReport*);
extern template FiniteQtMatrix funm_laurent(const FiniteQtMatrix&, const SeriesSpec&,
                                            const ToleranceConfig&, SeriesReport*);

}  // namespace cqt
