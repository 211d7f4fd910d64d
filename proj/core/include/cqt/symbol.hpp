#pragma once

#include <algorithm>
#include <functional>
#include <span>
#include <vector>

#include "cqt/config.hpp"

namespace cqt {

/// A finitely supported Laurent series a(z) = sum_j coeffs[j] z^(min_deg + j).
///
/// The stored sequence is canonical: it is either empty (the zero symbol) or
/// starts and ends with a nonzero coefficient.  Values are immutable once
/// built; all arithmetic returns new symbols.
class LaurentSymbol {
 public:
  LaurentSymbol() = default;
  LaurentSymbol(int min_deg, std::vector<cplx> coeffs);

  static LaurentSymbol constant(cplx c);
  static LaurentSymbol monomial(int degree, cplx c = 1.0);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Lowest / highest stored exponent.  The zero symbol reports (0, -1).
  int min_deg() const noexcept { return coeffs_.empty() ? 0 : min_deg_; }
  int max_deg() const noexcept {
    return coeffs_.empty() ? -1 : min_deg_ + static_cast<int>(coeffs_.size()) - 1;
  }
  /// Support bounds n_- and n_+ (number of sub- and super-diagonals of T(a)).
  int neg_extent() const noexcept { return is_zero() ? 0 : std::max(0, -min_deg_); }
  int pos_extent() const noexcept { return is_zero() ? 0 : std::max(0, max_deg()); }

  cplx coeff(int degree) const noexcept;
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  cplx operator()(cplx z) const;

  /// a(1/z); transposes T(a).
  LaurentSymbol reversed() const;
  /// Keeps only degrees in [lo, hi].
  LaurentSymbol clipped(int lo, int hi) const;

  LaurentSymbol operator-() const;
  friend LaurentSymbol operator+(const LaurentSymbol& a, const LaurentSymbol& b);
  friend LaurentSymbol operator-(const LaurentSymbol& a, const LaurentSymbol& b);
  friend LaurentSymbol operator*(cplx s, const LaurentSymbol& a);

  friend bool operator==(const LaurentSymbol& a, const LaurentSymbol& b) = default;

 private:
  int min_deg_ = 0;
  std::vector<cplx> coeffs_;
};

struct WienerNorms {
  double norm_w = 0.0;   // sum |a_i|
  double norm_w1 = 0.0;  // sum |i a_i|, the Wiener norm of a'(z)
};

WienerNorms wiener_norms(const LaurentSymbol& a);

enum class MulKernel { Auto, Direct, Fft };

/// c(z) = a(z) b(z).  Auto picks direct convolution for short factors and
/// FFT evaluation/interpolation otherwise.
LaurentSymbol sym_mul(const LaurentSymbol& a, const LaurentSymbol& b,
                      MulKernel kernel = MulKernel::Auto);

/// Finitely supported b with ||a b - 1||_W <= tol.
/// Throws ZeroOnCircle, NonzeroWinding, or NoConvergence.
LaurentSymbol sym_reciprocal(const LaurentSymbol& a, double tol);

/// Winding number of a(e^{i theta}) around the origin.  Throws ZeroOnCircle.
int winding_number(const LaurentSymbol& a);

/// Drops end coefficients of total modulus <= tol * max(1, ||a||_W).
LaurentSymbol sym_truncate(const LaurentSymbol& a, double tol);

struct SymbolSplit {
  LaurentSymbol minus;  // a_{-i} stored as the coefficient of z^i, i >= 1
  cplx zeroth{};
  LaurentSymbol plus;   // a_i, i >= 1
};

SymbolSplit sym_split(const LaurentSymbol& a);
LaurentSymbol sym_recombine(const SymbolSplit& s);

/// Values a(w^j), w = exp(2 pi i / n), j = 0..n-1.  Exact for any n >= 1
/// (coefficients alias modulo n).
std::vector<cplx> evaluate_on_circle(const LaurentSymbol& a, std::size_t n);

/// Coefficients of the trigonometric interpolant of `values` (samples at the
/// n-th roots of unity), placed on degrees [lo, lo + n).
LaurentSymbol interpolate_on_circle(std::span<const cplx> values, int lo);

/// Smallest |a(w)| over the samples divided by ||a||_W below which a symbol
/// counts as vanishing on the unit circle.
inline constexpr double kZeroOnCircleFloor = 1e-13;

/// f(a(z)) as a Laurent series, by sampling on a doubling grid of roots of
/// unity until the outer quarter of the interpolated coefficients carries
/// Wiener mass <= max(tol, 16 eps) times the total, then truncating at tol.
/// Throws NoConvergence when the grid exceeds max_points.
LaurentSymbol sym_compose(const LaurentSymbol& a, const std::function<cplx(cplx)>& f,
                          double tol, std::size_t max_points = std::size_t{1} << 22);

}  // namespace cqt
