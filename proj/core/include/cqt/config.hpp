#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace cqt {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Truncation and stopping policy shared by all algebra operations and the
/// matrix-function engines.
struct ToleranceConfig {
  double tol_symbol = 1e-14;  // relative Wiener-mass truncation of symbols
  double tol_corr = 1e-14;    // relative compression of corrections
  double tol_stop = 1e-12;    // stopping / certificate threshold
  int max_terms = 1000;       // series engines
  int max_finite_section = 4096;
  int max_levels = 12;        // contour engine, node doubling levels
  int annulus_samples = 256;  // grid for the Laurent-series annulus check

  /// Throws InvalidArgument unless all tolerances are positive and caps >= 1.
  void validate() const;

  /// Defaults, with max_finite_section overridden by CQT_MAX_SECTION if set.
  static ToleranceConfig from_environment();
};

}  // namespace cqt
