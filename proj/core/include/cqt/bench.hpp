#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cqt/funm_contour.hpp"

namespace cqt {

struct BenchRow {
  std::string case_id;           // "hessenberg-exp", "finite-exp", "contour-sqrt", ...
  long size = 0;                 // k for the Hessenberg family, m otherwise
  double time = 0.0;             // wall seconds of the engine call only
  int band = 0;                  // max(n_-, n_+) of the result symbol
  Index rows = 0;                // correction footprint (largest corner)
  Index columns = 0;
  Index rank = 0;
  std::optional<double> error;   // residual against an oracle, when one exists
  std::string failure;           // non-empty if the case threw
};

struct BenchReport {
  std::vector<BenchRow> rows;

  /// Fixed-width table with the columns case, size, time, band, rows,
  /// columns, rank, error.
  std::string table() const;
  /// Same rows as comma-separated values with a header line.
  std::string csv() const;
  bool all_ok() const;
};

struct BenchOptions {
  ToleranceConfig cfg;
  ContourSpec contour = ContourSpec::circle({1.5, 0.0}, 1.0);
  int threads = 1;
  Index check_rows = 80;     // Hessenberg: leading block compared ...
  Index dense_rows = 600;    // ... against exp of this dense section
};

/// H^k in the finite algebra, H = trid(1, 2, 1) / (2 + 2 cos(pi / (m + 1))).
FiniteQtMatrix laplacian_power(Index m, int k, const ToleranceConfig& cfg);

/// exp(T(a)), a(z) = sum_{i=-1}^{k} z^i, for k = 1..kmax.  Error: largest
/// entry difference of the leading check_rows block against the dense
/// exponential of the dense_rows section.
BenchReport bench_hessenberg_exp(int kmax, const BenchOptions& opt);

/// exp(H^10) for each m.  Error: Euclidean norm of the first-column
/// difference against the sine-transform oracle.
BenchReport bench_finite_exp(const std::vector<Index>& sizes, const BenchOptions& opt);

/// sqrt or log of I + H^10 by the contour engine.  Same error measure.
BenchReport bench_contour(const std::string& func, const std::vector<Index>& sizes,
                          const BenchOptions& opt);

}  // namespace cqt
