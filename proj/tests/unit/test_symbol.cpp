#include "doctest.h"

#include <cmath>

#include "cqt/error.hpp"
#include "cqt/symbol.hpp"
#include "support/oracle.hpp"

using cqt::LaurentSymbol;
using cplx = std::complex<double>;

namespace {

double wiener_gap(const LaurentSymbol& a, const oracle::Coeffs& b) {
  double s = 0.0;
  auto ca = oracle::coeff_map(a);
  for (auto& [d, x] : b) s += std::abs(oracle::at(ca, d) - x);
  for (auto& [d, x] : ca)
    if (!b.count(d)) s += std::abs(x);
  return s;
}

}  // namespace

TEST_CASE("canonical trim and accessors") {
  LaurentSymbol a(-2, {0.0, 0.0, 3.0, 0.0, 5.0, 0.0});
  CHECK(a.min_deg() == 0);
  CHECK(a.max_deg() == 2);
  CHECK(a.size() == 3);
  CHECK(a.coeff(2) == cplx(5.0));
  LaurentSymbol z(4, {0.0, 0.0});
  CHECK(z.is_zero());
  CHECK(z == LaurentSymbol{});
}

TEST_CASE("wiener norms") {
  const LaurentSymbol a(-1, {1.0, 2.0, 1.0});
  auto n = cqt::wiener_norms(a);
  CHECK(n.norm_w == doctest::Approx(4.0));
  CHECK(n.norm_w1 == doctest::Approx(2.0));
  auto z = cqt::wiener_norms(LaurentSymbol{});
  CHECK(z.norm_w == 0.0);
  CHECK(z.norm_w1 == 0.0);

  oracle::Random rng(7);
  const LaurentSymbol r = rng.symbol(-10, 10);
  double w = 0.0, w1 = 0.0;
  for (int d = -10; d <= 10; ++d) {
    w += std::abs(r.coeff(d));
    w1 += std::abs(double(d) * r.coeff(d));
  }
  n = cqt::wiener_norms(r);
  CHECK(n.norm_w == doctest::Approx(w).epsilon(1e-14));
  CHECK(n.norm_w1 == doctest::Approx(w1).epsilon(1e-14));
}

TEST_CASE("sym_mul small identities") {
  const LaurentSymbol p(0, {1.0, 1.0}), q(0, {1.0, -1.0});
  CHECK(cqt::sym_mul(p, q) == LaurentSymbol(0, {1.0, 0.0, -1.0}));
  CHECK(cqt::sym_mul(LaurentSymbol::monomial(1), LaurentSymbol::monomial(-1)) ==
        LaurentSymbol::constant(1.0));
}

TEST_CASE("sym_mul matches direct convolution for both kernels") {
  oracle::Random rng(11);
  for (int t = 0; t < 20; ++t) {
    const int la = rng.integer(-40, 0), lb = rng.integer(-40, 0);
    const LaurentSymbol a = rng.symbol(la, la + rng.integer(0, 60));
    const LaurentSymbol b = rng.symbol(lb, lb + rng.integer(0, 60));
    const auto ref = oracle::convolve(oracle::coeff_map(a), oracle::coeff_map(b));
    for (auto kernel : {cqt::MulKernel::Direct, cqt::MulKernel::Fft, cqt::MulKernel::Auto}) {
      CHECK(wiener_gap(cqt::sym_mul(a, b, kernel), ref) < 1e-13);
    }
  }
  const LaurentSymbol a = rng.symbol(-5, 5), b = rng.symbol(-5, 5);
  CHECK(wiener_gap(cqt::sym_mul(a, b), oracle::convolve(oracle::coeff_map(a), oracle::coeff_map(b))) <
        1e-14);
}

TEST_CASE("sym_mul algebraic properties") {
  oracle::Random rng(3);
  const LaurentSymbol a = rng.symbol(-20, 20), b = rng.symbol(-7, 30), c = rng.symbol(-30, 3);
  const LaurentSymbol ab = cqt::sym_mul(a, b);
  CHECK(cqt::wiener_norms(ab - cqt::sym_mul(b, a)).norm_w < 1e-12);
  CHECK(cqt::wiener_norms(cqt::sym_mul(ab, c) - cqt::sym_mul(a, cqt::sym_mul(b, c))).norm_w < 1e-12);
  CHECK(cqt::wiener_norms(ab).norm_w <=
        cqt::wiener_norms(a).norm_w * cqt::wiener_norms(b).norm_w * (1 + 1e-14));
}

TEST_CASE("winding number") {
  CHECK(cqt::winding_number(LaurentSymbol::monomial(1)) == 1);
  CHECK(cqt::winding_number(LaurentSymbol(0, {2.0, 1.0})) == 0);
  CHECK(cqt::winding_number(LaurentSymbol(-2, {1.0, 0.1})) == -2);
  CHECK_THROWS_AS(cqt::winding_number(LaurentSymbol(0, {1.0, 1.0})), cqt::Error);
  const LaurentSymbol a(-1, {0.3, 1.0, 0.2}), b(0, {0.1, 0.0, 1.0});
  CHECK(cqt::winding_number(cqt::sym_mul(a, b)) == cqt::winding_number(a) + cqt::winding_number(b));
}

TEST_CASE("reciprocal") {
  const auto half = cqt::sym_reciprocal(LaurentSymbol::constant(2.0), 1e-14);
  CHECK(half == LaurentSymbol::constant(0.5));

  const auto g = cqt::sym_reciprocal(LaurentSymbol(0, {1.0, -0.5}), 1e-14);
  CHECK(g.min_deg() == 0);
  for (int k = 0; k < 30; ++k) CHECK(std::abs(g.coeff(k) - std::pow(0.5, k)) < 1e-14);

  try {
    cqt::sym_reciprocal(LaurentSymbol::monomial(1), 1e-14);
    FAIL("expected an error");
  } catch (const cqt::Error& e) {
    CHECK(e.kind() == cqt::ErrorKind::NonzeroWinding);
  }
  try {
    cqt::sym_reciprocal(LaurentSymbol(-1, {1.0, 2.0, 1.0}), 1e-14);
    FAIL("expected an error");
  } catch (const cqt::Error& e) {
    CHECK(e.kind() == cqt::ErrorKind::ZeroOnCircle);
  }

  oracle::Random rng(5);
  for (int t = 0; t < 10; ++t) {
    LaurentSymbol a = LaurentSymbol::constant(3.0) + rng.symbol(-6, 6, 1.8);
    for (double tol : {1e-8, 1e-12, 1e-14}) {
      const auto b = cqt::sym_reciprocal(a, tol);
      CHECK(cqt::wiener_norms(cqt::sym_mul(a, b) - LaurentSymbol::constant(1.0)).norm_w <= tol);
    }
  }
}

TEST_CASE("truncate") {
  const LaurentSymbol a(-1, {1e-20, 1.0, 1e-20});
  CHECK(cqt::sym_truncate(a, 1e-12) == LaurentSymbol::constant(1.0));
  CHECK(cqt::sym_truncate(a, 0.0) == a);
  std::vector<cplx> c;
  for (int k = 0; k < 200; ++k) c.emplace_back(std::pow(0.8, k));
  const LaurentSymbol g(0, c);
  for (double tol : {1e-6, 1e-10, 1e-14}) {
    const auto t = cqt::sym_truncate(g, tol);
    double dropped = 0.0;
    for (int k = 0; k < 200; ++k) dropped += std::abs(g.coeff(k) - t.coeff(k));
    CHECK(dropped <= tol * cqt::wiener_norms(g).norm_w);
    CHECK(t.size() < g.size());
  }
}

TEST_CASE("split and recombine") {
  const LaurentSymbol a(-1, {3.0, 2.0, 1.0});
  auto s = cqt::sym_split(a);
  CHECK(s.minus == LaurentSymbol::monomial(1, 3.0));
  CHECK(s.zeroth == cplx(2.0));
  CHECK(s.plus == LaurentSymbol::monomial(1, 1.0));
  s = cqt::sym_split(LaurentSymbol::constant(5.0));
  CHECK(s.minus.is_zero());
  CHECK(s.plus.is_zero());
  CHECK(s.zeroth == cplx(5.0));
  oracle::Random rng(9);
  for (int t = 0; t < 10; ++t) {
    const int lo = rng.integer(-9, 3);
    const LaurentSymbol r = rng.symbol(lo, lo + rng.integer(0, 12));
    CHECK(cqt::sym_recombine(cqt::sym_split(r)) == r);
  }
}

TEST_CASE("evaluation and composition") {
  const LaurentSymbol a(-1, {1.0, 2.0, 1.0});
  const auto v = cqt::evaluate_on_circle(a, 8);
  for (int j = 0; j < 8; ++j) {
    const cplx w = std::polar(1.0, 2 * M_PI * j / 8);
    CHECK(std::abs(v[j] - a(w)) < 1e-14);
  }
  const auto back = cqt::interpolate_on_circle(v, -4);
  CHECK(cqt::wiener_norms(back - a).norm_w < 1e-14);

  const LaurentSymbol small(-1, {0.2, 0.1, 0.3});
  const auto e = cqt::sym_compose(small, [](cplx x) { return std::exp(x); }, 1e-15);
  for (int j = 0; j < 17; ++j) {
    const cplx w = std::polar(1.0, 0.37 * j);
    CHECK(std::abs(e(w) - std::exp(small(w))) < 1e-13);
  }
}

TEST_CASE("zero between grid points is reported as a zero on the circle") {
  // 1 + 2 cos(theta) changes sign at theta = 2 pi / 3, never a grid angle.
  const LaurentSymbol a(-1, {1.0, 1.0, 1.0});
  try {
    cqt::winding_number(a);
    FAIL("expected ZeroOnCircle");
  } catch (const cqt::Error& e) {
    CHECK(e.kind() == cqt::ErrorKind::ZeroOnCircle);
  }
  CHECK(cqt::winding_number(LaurentSymbol(-1, {1.0, 1.1, 0.0})) == 0);
}
