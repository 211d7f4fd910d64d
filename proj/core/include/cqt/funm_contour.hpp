#pragma once

#include <functional>
#include <vector>

#include "cqt/algebra.hpp"

namespace cqt {

/// Closed contour gamma: [a, b] -> C with its derivative.
struct ContourSpec {
  enum class Kind { Circle, Custom };

  Kind kind = Kind::Circle;
  cplx center{1.5, 0.0};
  double radius = 1.0;
  std::function<cplx(double)> gamma;
  std::function<cplx(double)> dgamma;
  double a = 0.0;
  double b = 0.0;

  /// center + radius e^{ix} on [0, 2 pi].
  static ContourSpec circle(cplx center, double radius);
  /// Any differentiable closed parametrization; gamma(a) must equal gamma(b).
  static ContourSpec custom(std::function<cplx(double)> gamma, std::function<cplx(double)> dgamma,
                            double a, double b);

  cplx point(double x) const;
  cplx derivative(double x) const;
  /// Same circle with the radius multiplied by `factor`.
  ContourSpec inflated(double factor) const;
};

/// Trapezoidal level n: 2^n + 1 equispaced nodes on [a, b], end weights
/// (b - a) / 2^{n+1}, interior weights (b - a) / 2^n.
struct QuadratureLevel {
  int n = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureLevel nodes_weights(const ContourSpec& contour, int n);

/// (zI - A)^{-1}.  Any inversion failure is reported as OnSpectrumIndicator
/// naming z.
template <QtAlgebra T>
T resolvent(const T& a, cplx z, const ToleranceConfig& cfg);

struct ContourReport {
  int levels = 0;               // last level n used, r_n returned
  int resolvents = 0;           // distinct nodes evaluated
  std::vector<double> deltas;   // ||r_{n+1} - r_n|| per refinement
  bool inflated = false;        // the one radius x1.1 retry was taken
  ContourSpec contour;          // the contour actually used
};

/// f(A) = (1 / 2 pi i) \oint f(z) (zI - A)^{-1} dz by trapezoidal sums on a
/// doubling node set, reusing the previous level's resolvents.  Stops when
/// ||r_{n+1} - r_n|| <= tol_stop.  f must be analytic on and inside the
/// contour; the symbol curve is checked to lie inside it.  New resolvents of
/// a level are computed on up to `threads` threads; the sum order is fixed.
template <QtAlgebra T>
T funm_contour(const T& a, const std::function<cplx(cplx)>& f, const ContourSpec& contour,
               const ToleranceConfig& cfg, ContourReport* report = nullptr, int threads = 1);

extern template CqtMatrix resolvent(const CqtMatrix&, cplx, const ToleranceConfig&);
extern template FiniteQtMatrix resolvent(const FiniteQtMatrix&, cplx, const ToleranceConfig&);
extern template CqtMatrix funm_contour(const CqtMatrix&, const std::function<cplx(cplx)>&,
                                       const ContourSpec&, const ToleranceConfig&, ContourReport*,
                                       int);
extern template FiniteQtMatrix funm_contour(const FiniteQtMatrix&, const std::function<cplx(cplx)>&,
                                            const ContourSpec&, const ToleranceConfig&,
                                            ContourReport*, int);

}  // namespace cqt
