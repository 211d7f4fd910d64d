#include "doctest.h"

#include "cqt/cqt_matrix.hpp"
#include "cqt/error.hpp"
#include "support/oracle.hpp"

using cqt::CqtMatrix;
using cqt::Correction;
using cqt::LaurentSymbol;
using oracle::Matrix;

namespace {

const cqt::ToleranceConfig cfg;

CqtMatrix random_cqt(oracle::Random& rng, int band, long p, long q) {
  const int lo = -rng.integer(0, band), hi = rng.integer(0, band);
  return {rng.symbol(lo, hi), rng.correction(p, q, rng.integer(1, 3))};
}

// Leading n x n block of the dense product of (n + k) sections.
Matrix dense_product(const CqtMatrix& a, const CqtMatrix& b, long n, long k) {
  return (oracle::section(a, n + k) * oracle::section(b, n + k)).topLeftCorner(n, n);
}

}  // namespace

TEST_CASE("add") {
  oracle::Random rng(1);
  const CqtMatrix a = random_cqt(rng, 5, 6, 4);
  CHECK(oracle::max_abs(oracle::section(cqt::cqt_add(a, CqtMatrix::zero(), cfg), 20) - oracle::section(a, 20)) == 0.0);
  const CqtMatrix s = cqt::cqt_add(CqtMatrix::toeplitz(LaurentSymbol::monomial(1)),
                                   CqtMatrix::toeplitz(LaurentSymbol::monomial(-1)), cfg);
  CHECK(s.symbol == LaurentSymbol(-1, {1.0, 0.0, 1.0}));
  for (int t = 0; t < 10; ++t) {
    const CqtMatrix x = random_cqt(rng, 6, 8, 5), y = random_cqt(rng, 6, 3, 9);
    const Matrix ref = oracle::section(x, 30) - 2.0 * oracle::section(y, 30);
    CHECK(oracle::max_abs(cqt::finite_section(cqt::cqt_add(x, y, cfg, -2.0), 30) - ref) < 1e-13);
  }
}

TEST_CASE("mul minimal instances") {
  const CqtMatrix p = cqt::cqt_mul(CqtMatrix::toeplitz(LaurentSymbol::monomial(-1)),
                                   CqtMatrix::toeplitz(LaurentSymbol::monomial(1)), cfg);
  CHECK(p.symbol == LaurentSymbol::constant(1.0));
  Matrix ref = Matrix::Identity(5, 5);
  ref(0, 0) = 0.0;
  CHECK(cqt::finite_section(p, 5) == ref);

  const CqtMatrix a{LaurentSymbol::constant(1.0), Correction::unit(0, 0)};
  const CqtMatrix q = cqt::cqt_mul(a, CqtMatrix::toeplitz(LaurentSymbol::monomial(1)), cfg);
  Matrix ref2 = oracle::toeplitz({{1, 1.0}}, 6, 6);
  ref2(0, 1) += 1.0;
  CHECK(oracle::max_abs(cqt::finite_section(q, 6) - ref2) < 1e-15);
}

TEST_CASE("mul matches dense truncations") {
  oracle::Random rng(2);
  for (int t = 0; t < 20; ++t) {
    const CqtMatrix a = random_cqt(rng, 8, rng.integer(1, 10), rng.integer(1, 10));
    const CqtMatrix b = random_cqt(rng, 8, rng.integer(1, 10), rng.integer(1, 10));
    const Matrix got = cqt::finite_section(cqt::cqt_mul(a, b, cfg), 60);
    CHECK(oracle::max_abs(got - dense_product(a, b, 60, 40)) < 1e-12);
  }
}

TEST_CASE("mul is associative on sections and submultiplicative") {
  oracle::Random rng(3);
  for (int t = 0; t < 10; ++t) {
    const CqtMatrix a = random_cqt(rng, 4, 5, 5), b = random_cqt(rng, 4, 3, 6), c = random_cqt(rng, 4, 6, 2);
    const CqtMatrix l = cqt::cqt_mul(cqt::cqt_mul(a, b, cfg), c, cfg);
    const CqtMatrix r = cqt::cqt_mul(a, cqt::cqt_mul(b, c, cfg), cfg);
    CHECK(oracle::max_abs(cqt::finite_section(l, 40) - cqt::finite_section(r, 40)) < 1e-12);
    CHECK(cqt::cqt_norm(cqt::cqt_mul(a, b, cfg)) <= cqt::cqt_norm(a) * cqt::cqt_norm(b) * (1 + 1e-10));
    CHECK(cqt::qt_norm(a) <= cqt::cqt_norm(a));
  }
}

TEST_CASE("norms and sections") {
  CHECK(cqt::cqt_norm(CqtMatrix::identity()) == 1.0);
  CHECK(cqt::qt_norm(CqtMatrix::identity()) == 1.0);
  const CqtMatrix t = CqtMatrix::toeplitz(LaurentSymbol(-1, {1.0, 0.0, 1.0}));
  CHECK(cqt::cqt_norm(t) == doctest::Approx(4.0));
  CHECK(cqt::qt_norm(t) == doctest::Approx(2.0));
  CHECK(cqt::finite_section(CqtMatrix::identity(), 3) == Matrix::Identity(3, 3));
  Matrix shift = Matrix::Zero(2, 2);
  shift(0, 1) = 1.0;
  CHECK(cqt::finite_section(CqtMatrix::toeplitz(LaurentSymbol::monomial(1)), 2) == shift);
  oracle::Random rng(4);
  const CqtMatrix a = random_cqt(rng, 5, 7, 9);
  CHECK(oracle::max_abs(cqt::finite_section(a, 25) - oracle::section(a, 25)) < 1e-15);
}

TEST_CASE("inverse") {
  const CqtMatrix two = CqtMatrix::toeplitz(LaurentSymbol::constant(2.0));
  CHECK(cqt::cqt_inv(two, cfg).symbol == LaurentSymbol::constant(0.5));

  const CqtMatrix tri = CqtMatrix::toeplitz(LaurentSymbol(0, {1.0, -0.5}));
  const CqtMatrix ti = cqt::cqt_inv(tri, cfg);
  CHECK(ti.corr.is_zero());
  for (int k = 0; k < 20; ++k) CHECK(std::abs(ti.symbol.coeff(k) - std::pow(0.5, k)) < 1e-14);

  const CqtMatrix a = CqtMatrix::toeplitz(LaurentSymbol(-1, {1.0, 4.0, 1.0}));
  cqt::InverseReport rep;
  const CqtMatrix b = cqt::cqt_inv(a, cfg, &rep);
  CHECK(rep.residual <= 1e-12 * std::max(1.0, cqt::qt_norm(a) * cqt::qt_norm(b)));
  const Matrix dense_inv = oracle::section(a, 400).inverse();
  CHECK(oracle::max_abs(cqt::finite_section(b, 50) - dense_inv.topLeftCorner(50, 50)) < 1e-10);

  try {
    cqt::cqt_inv(CqtMatrix::toeplitz(LaurentSymbol::monomial(1)), cfg);
    FAIL("expected an error");
  } catch (const cqt::Error& e) {
    CHECK(e.kind() == cqt::ErrorKind::NonzeroWinding);
  }

  oracle::Random rng(5);
  for (int t = 0; t < 5; ++t) {
    const CqtMatrix x = rng.invertible(rng.integer(1, 5), rng.integer(1, 8), rng.integer(1, 8));
    const CqtMatrix y = cqt::cqt_inv(x, cfg, &rep);
    const Matrix r = oracle::section(x, 150) * oracle::section(y, 150) - Matrix::Identity(150, 150);
    CHECK(oracle::max_abs(r.topLeftCorner(100, 100)) < 1e-10);
  }
}
