#include "cqt/symbol.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cqt/error.hpp"
#include "fft.hpp"

namespace cqt {
namespace {

constexpr std::size_t kDirectMulThreshold = 16;

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Degree d lives at slot (d mod n) of a length-n circular buffer.
std::size_t wrap(long long d, std::size_t n) {
  const auto nn = static_cast<long long>(n);
  return static_cast<std::size_t>(((d % nn) + nn) % nn);
}

void check_off_circle(std::span<const cplx> values, double norm_w) {
  const double floor = kZeroOnCircleFloor * norm_w;
  for (const auto& v : values) {
    if (std::abs(v) < floor || norm_w == 0.0) {
      throw Error(ErrorKind::ZeroOnCircle, "symbol vanishes (numerically) on the unit circle");
    }
  }
}

LaurentSymbol mul_direct(const LaurentSymbol& a, const LaurentSymbol& b) {
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  std::vector<cplx> c(ca.size() + cb.size() - 1, cplx{});
  for (std::size_t i = 0; i < ca.size(); ++i) {
    for (std::size_t j = 0; j < cb.size(); ++j) c[i + j] += ca[i] * cb[j];
  }
  return {a.min_deg() + b.min_deg(), std::move(c)};
}

LaurentSymbol mul_fft(const LaurentSymbol& a, const LaurentSymbol& b) {
  const std::size_t len = a.size() + b.size() - 1;
  const std::size_t n = next_pow2(len);
  std::vector<cplx> fa(n, cplx{}), fb(n, cplx{});
  std::copy(a.coeffs().begin(), a.coeffs().end(), fa.begin());
  std::copy(b.coeffs().begin(), b.coeffs().end(), fb.begin());
  detail::dft_evaluate(fa);
  detail::dft_evaluate(fb);
  for (std::size_t j = 0; j < n; ++j) fa[j] *= fb[j];
  detail::dft_interpolate(fa);
  fa.resize(len);
  return {a.min_deg() + b.min_deg(), std::move(fa)};
}

}  // namespace

LaurentSymbol::LaurentSymbol(int min_deg, std::vector<cplx> coeffs)
    : min_deg_(min_deg), coeffs_(std::move(coeffs)) {
  std::size_t first = 0;
  while (first < coeffs_.size() && coeffs_[first] == cplx{}) ++first;
  std::size_t last = coeffs_.size();
  while (last > first && coeffs_[last - 1] == cplx{}) --last;
  if (first == last) {
    coeffs_.clear();
    min_deg_ = 0;
    return;
  }
  if (first > 0 || last < coeffs_.size()) {
    coeffs_ = std::vector<cplx>(coeffs_.begin() + static_cast<std::ptrdiff_t>(first),
                                coeffs_.begin() + static_cast<std::ptrdiff_t>(last));
    min_deg_ += static_cast<int>(first);
  }
}

LaurentSymbol LaurentSymbol::constant(cplx c) { return {0, {c}}; }

LaurentSymbol LaurentSymbol::monomial(int degree, cplx c) { return {degree, {c}}; }

cplx LaurentSymbol::coeff(int degree) const noexcept {
  if (coeffs_.empty() || degree < min_deg_ || degree > max_deg()) return {};
  return coeffs_[static_cast<std::size_t>(degree - min_deg_)];
}

cplx LaurentSymbol::operator()(cplx z) const {
  if (coeffs_.empty()) return {};
  // Horner on the polynomial part, then shift by z^min_deg.
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc * std::pow(z, min_deg_);
}

LaurentSymbol LaurentSymbol::reversed() const {
  if (coeffs_.empty()) return {};
  return {-max_deg(), std::vector<cplx>(coeffs_.rbegin(), coeffs_.rend())};
}

LaurentSymbol LaurentSymbol::clipped(int lo, int hi) const {
  if (coeffs_.empty() || lo > hi) return {};
  const int from = std::max(lo, min_deg());
  const int to = std::min(hi, max_deg());
  if (from > to) return {};
  return {from, std::vector<cplx>(coeffs_.begin() + (from - min_deg_),
                                  coeffs_.begin() + (to - min_deg_ + 1))};
}

LaurentSymbol LaurentSymbol::operator-() const { return cplx{-1.0} * *this; }

LaurentSymbol operator+(const LaurentSymbol& a, const LaurentSymbol& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const int lo = std::min(a.min_deg(), b.min_deg());
  const int hi = std::max(a.max_deg(), b.max_deg());
  std::vector<cplx> c(static_cast<std::size_t>(hi - lo + 1), cplx{});
  for (int d = a.min_deg(); d <= a.max_deg(); ++d) c[d - lo] += a.coeff(d);
  for (int d = b.min_deg(); d <= b.max_deg(); ++d) c[d - lo] += b.coeff(d);
  return {lo, std::move(c)};
}

LaurentSymbol operator-(const LaurentSymbol& a, const LaurentSymbol& b) { return a + (-b); }

LaurentSymbol operator*(cplx s, const LaurentSymbol& a) {
  if (s == cplx{} || a.is_zero()) return {};
  std::vector<cplx> c(a.coeffs().begin(), a.coeffs().end());
  for (auto& x : c) x *= s;
  return {a.min_deg(), std::move(c)};
}

WienerNorms wiener_norms(const LaurentSymbol& a) {
  WienerNorms n;
  for (int d = a.min_deg(); d <= a.max_deg(); ++d) {
    const double m = std::abs(a.coeff(d));
    n.norm_w += m;
    n.norm_w1 += std::abs(d) * m;
  }
  return n;
}

LaurentSymbol sym_mul(const LaurentSymbol& a, const LaurentSymbol& b, MulKernel kernel) {
  if (a.is_zero() || b.is_zero()) return {};
  if (kernel == MulKernel::Auto) {
    kernel = std::min(a.size(), b.size()) <= kDirectMulThreshold ? MulKernel::Direct
                                                                 : MulKernel::Fft;
  }
  return kernel == MulKernel::Direct ? mul_direct(a, b) : mul_fft(a, b);
}

std::vector<cplx> evaluate_on_circle(const LaurentSymbol& a, std::size_t n) {
  std::vector<cplx> buf(n, cplx{});
  if (n == 0) return buf;
  for (int d = a.min_deg(); d <= a.max_deg(); ++d) buf[wrap(d, n)] += a.coeff(d);
  detail::dft_evaluate(buf);
  return buf;
}

LaurentSymbol interpolate_on_circle(std::span<const cplx> values, int lo) {
  const std::size_t n = values.size();
  std::vector<cplx> buf(values.begin(), values.end());
  detail::dft_interpolate(buf);
  std::vector<cplx> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = buf[wrap(lo + static_cast<long long>(k), n)];
  return {lo, std::move(c)};
}

namespace {

cplx eval_at_angle(const LaurentSymbol& a, double theta) {
  cplx sum{};
  for (int d = a.min_deg(); d <= a.max_deg(); ++d) sum += a.coeff(d) * std::polar(1.0, d * theta);
  return sum;
}

// Golden-section search for the smallest |a| on [lo, hi].  A sign change
// between grid points keeps the phase step near pi at every refinement, so
// the arc is searched directly.
double min_abs_on_arc(const LaurentSymbol& a, double lo, double hi) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = std::abs(eval_at_angle(a, x1)), f2 = std::abs(eval_at_angle(a, x2));
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = std::abs(eval_at_angle(a, x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = std::abs(eval_at_angle(a, x2));
    }
  }
  return std::min(f1, f2);
}

}  // namespace

int winding_number(const LaurentSymbol& a) {
  const double norm_w = wiener_norms(a).norm_w;
  if (a.is_zero()) throw Error(ErrorKind::ZeroOnCircle, "zero symbol has no winding number");
  constexpr std::size_t kMaxPoints = std::size_t{1} << 22;
  for (std::size_t n = std::max<std::size_t>(64, next_pow2(8 * a.size())); n <= kMaxPoints;
       n *= 2) {
    const auto v = evaluate_on_circle(a, n);
    check_off_circle(v, norm_w);
    double total = 0.0;
    bool fine_enough = true;
    for (std::size_t j = 0; j < n; ++j) {
      const double step = std::arg(v[(j + 1) % n] / v[j]);
      if (std::abs(step) >= std::numbers::pi / 2) {
        const double h = 2 * std::numbers::pi / static_cast<double>(n);
        if (min_abs_on_arc(a, h * static_cast<double>(j), h * static_cast<double>(j + 1)) <
            kZeroOnCircleFloor * norm_w) {
          throw Error(ErrorKind::ZeroOnCircle, "symbol vanishes (numerically) on the unit circle");
        }
        fine_enough = false;
        break;
      }
      total += step;
    }
    if (fine_enough) return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
  }
  throw Error(ErrorKind::NoConvergence, "winding number grid refinement exceeded its cap");
}

LaurentSymbol sym_truncate(const LaurentSymbol& a, double tol) {
  if (tol <= 0.0 || a.is_zero()) return a;
  const double budget = tol * std::max(1.0, wiener_norms(a).norm_w);
  const auto c = a.coeffs();
  std::size_t lo = 0, hi = c.size();  // kept range [lo, hi)
  double dropped = 0.0;
  while (lo < hi) {
    const double left = std::abs(c[lo]);
    const double right = std::abs(c[hi - 1]);
    const bool take_left = left <= right;
    const double m = take_left ? left : right;
    if (dropped + m > budget) break;
    dropped += m;
    if (take_left) ++lo; else --hi;
  }
  return {a.min_deg() + static_cast<int>(lo),
          std::vector<cplx>(c.begin() + static_cast<std::ptrdiff_t>(lo),
                            c.begin() + static_cast<std::ptrdiff_t>(hi))};
}

SymbolSplit sym_split(const LaurentSymbol& a) {
  SymbolSplit s;
  s.zeroth = a.coeff(0);
  s.plus = a.clipped(1, std::max(1, a.max_deg()));
  s.minus = a.clipped(std::min(-1, a.min_deg()), -1).reversed();
  return s;
}

LaurentSymbol sym_recombine(const SymbolSplit& s) {
  return s.minus.reversed() + LaurentSymbol::constant(s.zeroth) + s.plus;
}

LaurentSymbol sym_compose(const LaurentSymbol& a, const std::function<cplx(cplx)>& f,
                          double tol, std::size_t max_points) {
  for (std::size_t n = std::max<std::size_t>(32, next_pow2(4 * a.size())); n <= max_points;
       n *= 2) {
    auto v = evaluate_on_circle(a, n);
    for (auto& x : v) x = f(x);
    const int lo = -static_cast<int>(n / 2);
    LaurentSymbol c = interpolate_on_circle(v, lo);
    const int quarter = static_cast<int>(n / 4);
    double total = 0.0, outer = 0.0;
    for (int d = c.min_deg(); d <= c.max_deg(); ++d) {
      const double m = std::abs(c.coeff(d));
      total += m;
      if (d < -quarter || d >= quarter) outer += m;
    }
    // Below the rounding floor of the transform the tail cannot shrink further.
    const double floor = 16 * std::numeric_limits<double>::epsilon();
    if (outer <= std::max(tol, floor) * total) return sym_truncate(c, tol);
  }
  throw Error(ErrorKind::NoConvergence, "symbol composition grid exceeded its cap");
}

LaurentSymbol sym_reciprocal(const LaurentSymbol& a, double tol) {
  if (a.is_zero()) throw Error(ErrorKind::ZeroOnCircle, "zero symbol is not invertible");
  if (const int w = winding_number(a); w != 0) {
    throw Error(ErrorKind::NonzeroWinding,
                "symbol has winding number " + std::to_string(w) + ", reciprocal not representable");
  }
  const double norm_w = wiener_norms(a).norm_w;
  const LaurentSymbol one = LaurentSymbol::constant(1.0);
  double inner = tol;
  double best_residual = 0.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    LaurentSymbol b = sym_compose(
        a,
        [norm_w](cplx x) {
          if (std::abs(x) < kZeroOnCircleFloor * norm_w) {
            throw Error(ErrorKind::ZeroOnCircle, "symbol vanishes (numerically) on the unit circle");
          }
          return 1.0 / x;
        },
        inner);
    best_residual = wiener_norms(sym_mul(a, b) - one).norm_w;
    if (best_residual <= tol) return b;
    // Rounding floor of the product itself: nothing finer is attainable.
    const double floor = 64 * std::numeric_limits<double>::epsilon() * norm_w * wiener_norms(b).norm_w;
    if (inner <= 1e-16 && best_residual <= floor) return b;
    inner *= 0.1;
  }
  throw Error(ErrorKind::NoConvergence,
              "reciprocal residual " + std::to_string(best_residual) + " above tolerance");
}

}  // namespace cqt
