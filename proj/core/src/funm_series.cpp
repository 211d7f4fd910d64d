#include "cqt/funm_series.hpp"

#include <cmath>
#include <sstream>

#include "cqt/error.hpp"

namespace cqt {
namespace {

constexpr double kSeriesFloor = 1e-16;
constexpr int kQuietRun = 3;          // consecutive negligible terms before stopping
constexpr int kMaxAbsSeriesTerms = 1'000'000;
constexpr double kGeneralBoundGuard = 1e-10;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// |c| t^k without overflow for large k.
double term_size(cplx c, double t, int k) {
  const double ac = std::abs(c);
  if (ac == 0.0) return 0.0;
  if (t == 0.0) return k == 0 ? ac : 0.0;
  return std::exp(std::log(ac) + k * std::log(t));
}

cplx binomial_half(int i) {
  double c = 1.0;
  for (int k = 0; k < i; ++k) c *= (0.5 - k) / (k + 1);
  return c;
}

void check_radius(double norm, const SeriesSpec& f) {
  if (!(norm < f.radius)) {
    throw Error(ErrorKind::RadiusViolation,
                "||A||_CQT = " + fmt(norm) + " >= rho = " + fmt(f.radius) + " for " + f.name +
                    ": the power series hypothesis ||A||_CQT < rho fails");
  }
}

// Running state of one side of a series: powers, the accumulated correction,
// the partial-sum symbol and the stopping rule.
template <QtAlgebra T>
struct SeriesSide {
  const SeriesSpec& f;
  int sign;            // +1: f_i A^i, -1: f_{-i} A^{-i}
  double norm;
  std::optional<int> degree;
  T base;
  T power;
  T corr;
  LaurentSymbol partial;
  int quiet = 0;
  int terms = 0;
  double last_term = 0.0;
  double prev_term = 0.0;
  double gamma = 0.0;
  bool done = false;

  SeriesSide(const SeriesSpec& spec, int s, const T& b, double n, std::optional<int> deg)
      : f(spec), sign(s), norm(n), degree(deg), base(b), power(identity_like(b)),
        corr(zero_like(b)) {
    if (degree && *degree <= 0) done = true;
  }

  void step(const ToleranceConfig& cfg) {
    const int k = terms + 1;
    power = times(base, power, cfg);
    const cplx fk = f.coeff(sign * k);
    if (fk != cplx{}) {
      corr = plus(corr, correction_only(power), cfg, fk);
      partial = partial + fk * symbol_of(power);
    }
    terms = k;
    prev_term = last_term;
    last_term = term_size(fk, norm, k);
    if (std::isfinite(f.radius)) {
      const double eps = 0.5 * (f.radius - norm);
      gamma = std::max(gamma, term_size(fk, f.radius - eps, k));
    }
    if (degree) {
      done = k >= *degree;
    } else {
      quiet = last_term < cfg.tol_stop ? quiet + 1 : 0;
      done = quiet >= kQuietRun;
    }
  }

  double tail() const {
    if (degree) return 0.0;
    if (std::isfinite(f.radius)) {
      const double eps = 0.5 * (f.radius - norm);
      const double q = norm / (f.radius - eps);
      return gamma * std::pow(q, terms + 1) / (1.0 - q);
    }
    if (prev_term > 0.0 && last_term < prev_term) {
      const double r = last_term / prev_term;
      return last_term * r / (1.0 - r);
    }
    return last_term;
  }
};

// In the finite algebra the symbols of the computed powers are clipped to the
// band |k| < m at every product, and the corners are relative to those
// clipped symbols, so the partial sums are the consistent Toeplitz part there.
template <QtAlgebra T>
LaurentSymbol symbol_part(const SeriesSpec& f, const LaurentSymbol& a, const LaurentSymbol& partial,
                          const ToleranceConfig& cfg) {
  if (f.scalar && !std::same_as<T, FiniteQtMatrix>) return sym_compose(a, f.scalar, cfg.tol_symbol);
  return sym_truncate(partial, cfg.tol_symbol);
}

}  // namespace

SeriesSpec SeriesSpec::exp() {
  SeriesSpec s;
  s.name = "exp";
  s.coeff = [](int i) -> cplx { return i < 0 ? 0.0 : std::exp(-std::lgamma(i + 1.0)); };
  s.scalar = [](cplx x) { return std::exp(x); };
  return s;
}

SeriesSpec SeriesSpec::log1p() {
  SeriesSpec s;
  s.name = "log1p";
  s.coeff = [](int i) -> cplx { return i < 1 ? 0.0 : ((i % 2) ? 1.0 : -1.0) / i; };
  s.scalar = [](cplx x) { return std::log(1.0 + x); };
  s.radius = 1.0;
  return s;
}

SeriesSpec SeriesSpec::sqrt1p() {
  SeriesSpec s;
  s.name = "sqrt1p";
  s.coeff = [](int i) -> cplx { return i < 0 ? 0.0 : binomial_half(i); };
  s.scalar = [](cplx x) { return std::sqrt(1.0 + x); };
  s.radius = 1.0;
  return s;
}

SeriesSpec SeriesSpec::polynomial(std::vector<cplx> coeffs) {
  SeriesSpec s;
  s.name = "polynomial";
  while (!coeffs.empty() && coeffs.back() == cplx{}) coeffs.pop_back();
  s.degree = static_cast<int>(coeffs.size()) - 1;
  if (*s.degree < 0) s.degree = 0;
  s.coeff = [c = std::move(coeffs)](int i) -> cplx {
    return (i < 0 || i >= static_cast<int>(c.size())) ? 0.0 : c[static_cast<std::size_t>(i)];
  };
  return s;
}

SeriesSpec SeriesSpec::laurent_polynomial(std::vector<cplx> pos, std::vector<cplx> neg) {
  SeriesSpec s;
  s.name = "laurent-polynomial";
  s.laurent = true;
  s.radius = kInfinity;
  s.degree = std::max(0, static_cast<int>(pos.size()) - 1);
  s.neg_degree = static_cast<int>(neg.size());
  s.coeff = [p = std::move(pos), n = std::move(neg)](int i) -> cplx {
    if (i >= 0) return i < static_cast<int>(p.size()) ? p[static_cast<std::size_t>(i)] : 0.0;
    const int k = -i - 1;
    return k < static_cast<int>(n.size()) ? n[static_cast<std::size_t>(k)] : 0.0;
  };
  return s;
}

double SeriesSpec::abs_series(double t, int derivative) const {
  if (!(t < radius)) {
    throw Error(ErrorKind::RadiusViolation,
                "g evaluated at " + fmt(t) + " outside the disk of radius " + fmt(radius));
  }
  double falling = 1.0;  // i! / (i - derivative)! at i = derivative
  for (int j = 2; j <= derivative; ++j) falling *= j;
  if (t == 0.0) return std::abs(coeff(derivative)) * falling;

  double sum = 0.0;
  int quiet = 0;
  const int last = degree ? *degree : kMaxAbsSeriesTerms;
  for (int i = derivative; i <= last; ++i) {
    if (i > derivative) falling *= static_cast<double>(i) / (i - derivative);
    const double term = falling * term_size(coeff(i), t, i - derivative);
    sum += term;
    quiet = (term <= kSeriesFloor * sum) ? quiet + 1 : 0;
    if (!degree && quiet >= 5 && i > derivative + 2) return sum;
  }
  if (!degree) throw Error(ErrorKind::NoConvergence, "majorant series g did not converge");
  return sum;
}

template <QtAlgebra T>
T funm_taylor(const T& a, const SeriesSpec& f, const ToleranceConfig& cfg, SeriesReport* report) {
  cfg.validate();
  if (f.laurent) return funm_laurent(a, f, cfg, report);
  const double norm = algebra_norm(a);
  check_radius(norm, f);

  SeriesSide<T> side(f, +1, a, norm, f.degree);
  side.partial = LaurentSymbol::constant(f.coeff(0));
  while (!side.done) {
    if (side.terms >= cfg.max_terms) {
      throw Error(ErrorKind::NoConvergence,
                  f.name + " series: max_terms = " + std::to_string(cfg.max_terms) +
                      " reached before the tail fell below tol_stop");
    }
    side.step(cfg);
  }
  if (report != nullptr) {
    *report = {};
    report->terms = side.terms;
    report->norm_a = norm;
    report->tail_estimate = side.tail();
    report->gamma = side.gamma;
  }
  return with_symbol(side.corr, symbol_part<T>(f, symbol_of(a), side.partial, cfg));
}

template <QtAlgebra T>
T funm_laurent(const T& a, const SeriesSpec& f, const ToleranceConfig& cfg, SeriesReport* report) {
  cfg.validate();
  const double norm = algebra_norm(a);
  if (!(norm < f.r_outer)) {
    throw Error(ErrorKind::RadiusViolation, "||A||_CQT = " + fmt(norm) + " >= R_f = " +
                                                fmt(f.r_outer) + ": Laurent series hypothesis fails");
  }
  for (const cplx& v : evaluate_on_circle(symbol_of(a), static_cast<std::size_t>(cfg.annulus_samples))) {
    const double r = std::abs(v);
    if (!(r > f.r_inner && r < f.r_outer)) {
      throw Error(ErrorKind::RadiusViolation,
                  "symbol value of modulus " + fmt(r) + " outside the annulus (" + fmt(f.r_inner) +
                      ", " + fmt(f.r_outer) + ")");
    }
  }
  const T inv = inverse(a, cfg);
  const double norm_inv = algebra_norm(inv);
  if (f.r_inner > 0.0 && !(norm_inv < 1.0 / f.r_inner)) {
    throw Error(ErrorKind::RadiusViolation, "||A^-1||_CQT = " + fmt(norm_inv) + " >= 1/r_f = " +
                                                fmt(1.0 / f.r_inner) +
                                                ": Laurent series hypothesis fails");
  }

  SeriesSpec outer = f;
  outer.radius = f.r_outer;
  SeriesSpec inner = f;
  inner.radius = f.r_inner > 0.0 ? 1.0 / f.r_inner : kInfinity;
  SeriesSide<T> pos(outer, +1, a, norm, f.degree);
  SeriesSide<T> neg(inner, -1, inv, norm_inv, f.neg_degree);
  pos.partial = LaurentSymbol::constant(f.coeff(0));
  while (!pos.done || !neg.done) {
    if (std::max(pos.terms, neg.terms) >= cfg.max_terms) {
      throw Error(ErrorKind::NoConvergence,
                  f.name + " Laurent series: max_terms = " + std::to_string(cfg.max_terms) +
                      " reached before both tails fell below tol_stop");
    }
    if (!pos.done) pos.step(cfg);
    if (!neg.done) neg.step(cfg);
  }
  if (report != nullptr) {
    *report = {};
    report->terms = pos.terms;
    report->neg_terms = neg.terms;
    report->norm_a = norm;
    report->norm_inv = norm_inv;
    report->tail_estimate = pos.tail() + neg.tail();
    report->gamma = std::max(pos.gamma, neg.gamma);
  }
  const T corr = plus(pos.corr, neg.corr, cfg);
  return with_symbol(corr, symbol_part<T>(f, symbol_of(a), pos.partial + neg.partial, cfg));
}

std::vector<Correction> power_corrections(const LaurentSymbol& a, const Correction& e, int k,
                                          const ToleranceConfig& cfg) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "power_corrections needs k >= 1");
  const LaurentSymbol a_minus = sym_split(a).minus;
  std::vector<Correction> out;
  LaurentSymbol prev = LaurentSymbol::constant(1.0);  // a^{i-1}
  Correction d;
  if (e.is_zero()) {
    // E_1 = 0, E_i = T(a) E_{i-1} - H(a^-) H((a^{i-1})^+)
    for (int i = 1; i <= k; ++i) {
      if (i > 1) {
        d = corr_add(toeplitz_times_corr(a, d), hankel_product(a_minus, sym_split(prev).plus), -1.0);
        d = corr_compress(d, cfg.tol_corr);
      }
      out.push_back(d);
      prev = sym_truncate(sym_mul(prev, a), cfg.tol_symbol);
    }
    return out;
  }
  // D_0 = 0, D_i = A D_{i-1} - H(a^-) H((a^{i-1})^+) + E T(a^{i-1})
  out.push_back(d);
  for (int i = 1; i <= k; ++i) {
    Correction next = corr_add(toeplitz_times_corr(a, d), corr_mul(e, d));
    next = corr_add(next, hankel_product(a_minus, sym_split(prev).plus), -1.0);
    next = corr_add(next, corr_times_toeplitz(e, prev));
    d = corr_compress(next, cfg.tol_corr);
    out.push_back(d);
    prev = sym_truncate(sym_mul(prev, a), cfg.tol_symbol);
  }
  return out;
}

namespace {

// q_i = (s+e) q_{i-1} + (i-1) s^{i-2},  p_i = (s+e) p_{i-1} + s^{i-1},
// with q_0 = p_0 = 0.  ||D_i|| <= beta q_i + e p_i.
struct BoundRecurrence {
  double s, e, q = 0.0, p = 0.0;
  int i = 0;
  void advance() {
    ++i;
    const double sp = (i >= 2) ? std::pow(s, i - 2) : 0.0;
    q = (s + e) * q + (i - 1) * sp;
    p = (s + e) * p + std::pow(s, i - 1);
  }
};

}  // namespace

double power_correction_bound(const LaurentSymbol& a, double norm_e, int i) {
  const auto n = wiener_norms(a);
  BoundRecurrence r{n.norm_w, norm_e};
  while (r.i < i) r.advance();
  return n.norm_w1 * n.norm_w1 * r.q + norm_e * r.p;
}

double bound_correction_toeplitz(const SeriesSpec& f, const LaurentSymbol& a) {
  const auto n = wiener_norms(a);
  if (!(n.norm_w < f.radius)) {
    throw Error(ErrorKind::RadiusViolation,
                "||a||_W = " + fmt(n.norm_w) + " >= rho = " + fmt(f.radius));
  }
  if (n.norm_w1 == 0.0) return 0.0;
  return 0.5 * n.norm_w1 * n.norm_w1 * f.abs_series(n.norm_w, 2);
}

double bound_correction_general(const SeriesSpec& f, const LaurentSymbol& a, double norm_e) {
  if (norm_e < kGeneralBoundGuard) return bound_correction_toeplitz(f, a);
  const auto n = wiener_norms(a);
  if (!(n.norm_w + norm_e < f.radius)) {
    throw Error(ErrorKind::RadiusViolation, "||a||_W + ||E|| = " + fmt(n.norm_w + norm_e) +
                                                " >= rho = " + fmt(f.radius));
  }
  const double beta = n.norm_w1 * n.norm_w1;
  const double weight = std::max(1.0, norm_e);
  BoundRecurrence r{n.norm_w, norm_e};
  double sum = 0.0;
  int quiet = 0;
  const int last = f.degree ? *f.degree : kMaxAbsSeriesTerms;
  while (r.i < last) {
    r.advance();
    const double term = std::abs(f.coeff(r.i)) * (beta * r.q + weight * r.p);
    if (!std::isfinite(term)) break;
    sum += term;
    quiet = (term <= kSeriesFloor * sum) ? quiet + 1 : 0;
    if (!f.degree && quiet >= 5 && r.i > 3) return sum;
  }
  if (!f.degree) throw Error(ErrorKind::NoConvergence, "general correction bound did not converge");
  return sum;
}

template CqtMatrix funm_taylor(const CqtMatrix&, const SeriesSpec&, const ToleranceConfig&,
                               SeriesReport*);
template FiniteQtMatrix funm_taylor(const FiniteQtMatrix&, const SeriesSpec&,
                                    const ToleranceConfig&, SeriesReport*);
template CqtMatrix funm_laurent(const CqtMatrix&, const SeriesSpec&, const ToleranceConfig&,
                                SeriesReport*);
template FiniteQtMatrix funm_laurent(const FiniteQtMatrix&, const SeriesSpec&,
                                     const ToleranceConfig&, SeriesReport*);

}  // namespace cqt
