#include "cqt/funm_contour.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include "cqt/error.hpp"

namespace cqt {
namespace {

constexpr double kInflation = 1.1;
constexpr int kWindingSamples = 1024;
// Corrections inside the quadrature are compressed this far below tol_stop,
// so compression losses stay under the level-to-level differences that the
// stopping test measures in the entrywise-sum norm, but not below the
// rounding level of a dense inverse, where compression stops removing rank.
constexpr double kInnerTolerance = 1e-4;
constexpr double kInnerFloor = 4e-15;

std::string fmt(cplx z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

// Winding number of the polygon through gamma's samples around v.
int winding_around(const std::vector<cplx>& curve, cplx v) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < curve.size(); ++k) {
    total += std::arg((curve[k + 1] - v) / (curve[k] - v));
  }
  return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

void check_enclosure(const LaurentSymbol& a, const ContourSpec& c, const ToleranceConfig& cfg) {
  const auto values = evaluate_on_circle(a, static_cast<std::size_t>(cfg.annulus_samples));
  std::vector<cplx> curve;
  if (c.kind == ContourSpec::Kind::Custom) {
    curve.reserve(kWindingSamples + 1);
    for (int k = 0; k <= kWindingSamples; ++k) curve.push_back(c.point(c.a + (c.b - c.a) * k / kWindingSamples));
  }
  for (const cplx& v : values) {
    const bool inside = c.kind == ContourSpec::Kind::Circle ? std::abs(v - c.center) < c.radius
                                                            : winding_around(curve, v) != 0;
    if (!inside) {
      throw Error(ErrorKind::OnSpectrumIndicator,
                  "symbol value " + fmt(v) + " is not enclosed by the contour");
    }
  }
}

class NodeFailure : public std::runtime_error {
 public:
  explicit NodeFailure(const Error& e) : std::runtime_error(e.what()), error(e) {}
  Error error;
};

template <QtAlgebra T>
T contour_once(const T& a, const std::function<cplx(cplx)>& f, const ContourSpec& c,
               const ToleranceConfig& cfg, ContourReport& rep, int threads) {
  const double len = c.b - c.a;
  const cplx scale = 1.0 / (2.0 * std::numbers::pi * cplx{0.0, 1.0});
  // g(x) = gamma'(x) f(gamma(x)) R(gamma(x)) / (2 pi i), one entry per
  // node of the finest level so far (merged endpoint excluded).
  std::vector<T> g;
  rep.deltas.clear();
  rep.resolvents = 0;

  auto evaluate = [&](double x) {
    const cplx z = c.point(x);
    try {
      return scaled(resolvent(a, z, cfg), scale * c.derivative(x) * f(z));
    } catch (const Error& e) {
      throw NodeFailure(e);
    }
  };

  auto fill = [&](int level) {
    const std::size_t count = std::size_t{1} << level;
    std::vector<T> next(count);
    std::vector<std::size_t> todo;
    for (std::size_t k = 0; k < count; ++k) {
      if (k % 2 == 0 && !g.empty()) {
        next[k] = std::move(g[k / 2]);
      } else {
        todo.push_back(k);
      }
    }
    const double h = len / static_cast<double>(count);
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(todo.size())));
    std::vector<std::exception_ptr> failures(todo.size());
    auto run = [&](int w) {
      for (std::size_t t = static_cast<std::size_t>(w); t < todo.size(); t += static_cast<std::size_t>(workers)) {
        try {
          next[todo[t]] = evaluate(c.a + h * static_cast<double>(todo[t]));
        } catch (...) {
          failures[t] = std::current_exception();
        }
      }
    };
    if (workers == 1) {
      run(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
      for (auto& th : pool) th.join();
    }
    for (const auto& e : failures) {
      if (e) std::rethrow_exception(e);
    }
    rep.resolvents += static_cast<int>(todo.size());
    g = std::move(next);
  };

  auto sum = [&](int level) {
    const double h = len / static_cast<double>(std::size_t{1} << level);
    T acc = zero_like(a);
    for (const T& gk : g) acc = plus(acc, gk, cfg, h);
    return acc;
  };

  fill(1);
  T prev = sum(1);
  for (int level = 2; level <= cfg.max_levels; ++level) {
    fill(level);
    T cur = sum(level);
    const double delta = algebra_norm(plus(cur, prev, cfg, -1.0));
    rep.deltas.push_back(delta);
    rep.levels = level;
    if (delta <= cfg.tol_stop) return cur;
    prev = std::move(cur);
  }
  std::ostringstream msg;
  msg << "trapezoidal iterates did not settle within max_levels = " << cfg.max_levels
      << " (last ||r_{n+1} - r_n|| = " << (rep.deltas.empty() ? 0.0 : rep.deltas.back()) << ")";
  throw Error(ErrorKind::NoConvergence, msg.str());
}

}  // namespace

ContourSpec ContourSpec::circle(cplx center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorKind::InvalidArgument, "contour radius must be positive");
  }
  ContourSpec c;
  c.kind = Kind::Circle;
  c.center = center;
  c.radius = radius;
  c.a = 0.0;
  c.b = 2 * std::numbers::pi;
  return c;
}

ContourSpec ContourSpec::custom(std::function<cplx(double)> gamma,
                                std::function<cplx(double)> dgamma, double a, double b) {
  if (!gamma || !dgamma) throw Error(ErrorKind::InvalidArgument, "custom contour needs gamma and gamma'");
  if (!(b > a)) throw Error(ErrorKind::InvalidArgument, "custom contour needs a < b");
  const cplx ga = gamma(a), gb = gamma(b);
  if (std::abs(ga - gb) > 1e-12 * std::max(1.0, std::abs(ga))) {
    throw Error(ErrorKind::InvalidArgument, "custom contour is not closed: gamma(a) != gamma(b)");
  }
  ContourSpec c;
  c.kind = Kind::Custom;
  c.gamma = std::move(gamma);
  c.dgamma = std::move(dgamma);
  c.a = a;
  c.b = b;
  return c;
}

cplx ContourSpec::point(double x) const {
  if (kind == Kind::Circle) return center + radius * std::polar(1.0, x);
  return gamma(x);
}

cplx ContourSpec::derivative(double x) const {
  if (kind == Kind::Circle) return cplx{0.0, 1.0} * radius * std::polar(1.0, x);
  return dgamma(x);
}

ContourSpec ContourSpec::inflated(double factor) const {
  if (kind != Kind::Circle) throw Error(ErrorKind::InvalidArgument, "only circles can be inflated");
  return circle(center, radius * factor);
}

QuadratureLevel nodes_weights(const ContourSpec& contour, int n) {
  if (n < 1 || n > 30) throw Error(ErrorKind::InvalidArgument, "quadrature level must be in [1, 30]");
  const std::size_t count = (std::size_t{1} << n) + 1;
  const double len = contour.b - contour.a;
  const double h = len / static_cast<double>(count - 1);
  QuadratureLevel q;
  q.n = n;
  q.nodes.resize(count);
  q.weights.assign(count, h);
  for (std::size_t k = 0; k < count; ++k) q.nodes[k] = contour.a + h * static_cast<double>(k);
  q.nodes.back() = contour.b;
  q.weights.front() = q.weights.back() = 0.5 * h;
  return q;
}

template <QtAlgebra T>
T resolvent(const T& a, cplx z, const ToleranceConfig& cfg) {
  const T shifted = plus(scaled(identity_like(a), z), a, cfg, -1.0);
  try {
    return inverse(shifted, cfg);
  } catch (const Error& e) {
    throw Error(ErrorKind::OnSpectrumIndicator,
                "resolvent at z = " + fmt(z) + " failed (" + e.what() + ")");
  }
}

template <QtAlgebra T>
T funm_contour(const T& a, const std::function<cplx(cplx)>& f, const ContourSpec& contour,
               const ToleranceConfig& cfg, ContourReport* report, int threads) {
  cfg.validate();
  ContourReport local;
  ContourReport& rep = report != nullptr ? *report : local;
  rep = {};
  rep.contour = contour;
  check_enclosure(symbol_of(a), contour, cfg);
  ToleranceConfig inner = cfg;
  inner.tol_corr = std::min(cfg.tol_corr, std::max(kInnerTolerance * cfg.tol_stop, kInnerFloor));
  inner.tol_symbol = std::min(cfg.tol_symbol, kInnerTolerance * cfg.tol_stop);
  try {
    return contour_once(a, f, contour, inner, rep, threads);
  } catch (const NodeFailure& nf) {
    if (contour.kind != ContourSpec::Kind::Circle) throw nf.error;
    const ContourSpec wider = contour.inflated(kInflation);
    std::cerr << "cqt: " << nf.what() << "; retrying once with contour radius " << wider.radius
              << '\n';
    rep.inflated = true;
    rep.contour = wider;
    check_enclosure(symbol_of(a), wider, cfg);
    try {
      return contour_once(a, f, wider, inner, rep, threads);
    } catch (const NodeFailure& again) {
      throw again.error;
    }
  }
}

template CqtMatrix resolvent(const CqtMatrix&, cplx, const ToleranceConfig&);
template FiniteQtMatrix resolvent(const FiniteQtMatrix&, cplx, const ToleranceConfig&);
template CqtMatrix funm_contour(const CqtMatrix&, const std::function<cplx(cplx)>&,
                               const ContourSpec&, const ToleranceConfig&, ContourReport*, int);
template FiniteQtMatrix funm_contour(const FiniteQtMatrix&, const std::function<cplx(cplx)>&,
                                     const ContourSpec&, const ToleranceConfig&, ContourReport*,
                                     int);

}  // namespace cqt
