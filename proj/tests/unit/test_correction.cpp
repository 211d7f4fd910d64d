#include "doctest.h"

#include "cqt/correction.hpp"
#include "support/oracle.hpp"

using cqt::Correction;
using cqt::LaurentSymbol;
using oracle::Matrix;

TEST_CASE("corr_add") {
  const Correction e = Correction::unit(0, 0);
  CHECK(cqt::corr_compress(cqt::corr_add(e, e, -1.0), 1e-14).is_zero());
  const Correction same = cqt::corr_add(e, Correction::zero());
  CHECK(same.dense() == e.dense());

  oracle::Random rng(1);
  const Correction a = rng.correction(7, 5, 2), b = rng.correction(4, 9, 3);
  const Correction s = cqt::corr_add(a, b, {0.5, -1.0});
  Matrix ref = Matrix::Zero(7, 9);
  ref.topLeftCorner(7, 5) += a.u * a.v.transpose();
  ref.topLeftCorner(4, 9) += std::complex<double>(0.5, -1.0) * b.u * b.v.transpose();
  CHECK(oracle::max_abs(s.dense(7, 9) - ref) < 1e-14);
  CHECK(oracle::max_abs(cqt::corr_add(a, b).dense(7, 9) - cqt::corr_add(b, a).dense(7, 9)) < 1e-13);
}

TEST_CASE("corr_compress") {
  oracle::Random rng(2);
  const Matrix u = rng.matrix(10, 1), v = rng.matrix(8, 1);
  Matrix uu(10, 2), vv(8, 2);
  uu << u, u;
  vv << v, v;
  CHECK(cqt::corr_compress(Correction(uu, vv), 1e-14).rank() == 1);

  const Correction r4 = rng.correction(12, 11, 4);
  CHECK(cqt::corr_compress(r4, 0.0).rank() == 4);

  const Matrix a = rng.matrix(30, 5), b = rng.matrix(25, 5);
  const Matrix noise = rng.matrix(30, 25, 1e-16);
  const Correction noisy = Correction::from_dense(a * b.transpose() + noise);
  const Correction c = cqt::corr_compress(noisy, 1e-12);
  CHECK(c.rank() == 5);
  CHECK(cqt::corr_compress(c, 1e-12).rank() == 5);

  const double before = cqt::abs_sum_norm(noisy);
  const Matrix diff = noisy.dense(30, 25) - c.dense(30, 25);
  CHECK(diff.cwiseAbs().sum() <= 1e-12 * std::sqrt(30.0 * 25.0) * std::max(1.0, before));

  // Trailing zero rows are trimmed.
  Matrix tall = Matrix::Zero(20, 2);
  tall.topRows(3) = rng.matrix(3, 2);
  const Correction trimmed = cqt::corr_compress(Correction(tall, rng.matrix(6, 2)), 1e-14);
  CHECK(trimmed.rows() == 3);
}

TEST_CASE("abs_sum_norm") {
  CHECK(cqt::abs_sum_norm(Correction::unit(0, 0)) == doctest::Approx(1.0));
  CHECK(cqt::abs_sum_norm(Correction::zero()) == 0.0);
  oracle::Random rng(3);
  const Correction e = rng.correction(140, 30, 3, 5.0);
  const double ref = (e.u * e.v.transpose()).cwiseAbs().sum();
  CHECK(cqt::abs_sum_norm(e) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("hankel_product") {
  const Correction one = cqt::hankel_product(LaurentSymbol::monomial(1), LaurentSymbol::monomial(1));
  CHECK(one.rows() == 1);
  CHECK(one.cols() == 1);
  CHECK(one.entry(0, 0) == std::complex<double>(1.0));
  CHECK(cqt::hankel_product(LaurentSymbol{}, LaurentSymbol::monomial(1)).is_zero());

  oracle::Random rng(4);
  const LaurentSymbol am = rng.symbol(1, 4), bp = rng.symbol(1, 6);
  const Matrix ref = oracle::hankel(oracle::coeff_map(am), 4, 10) * oracle::hankel(oracle::coeff_map(bp), 10, 6);
  const Correction h = cqt::hankel_product(am, bp);
  CHECK(h.rank() <= 4);
  CHECK(oracle::max_abs(h.dense(4, 6) - ref) < 1e-14);
}

TEST_CASE("toeplitz times factors") {
  oracle::Random rng(5);
  const LaurentSymbol a = rng.symbol(-3, 4);
  const Matrix u = rng.matrix(9, 2);
  const Matrix ref = oracle::toeplitz(oracle::coeff_map(a), 20, 20) * cqt::pad_rows(u, 20);
  const Matrix tu = cqt::toeplitz_times(a, u);
  CHECK(tu.rows() == 12);
  CHECK(oracle::max_abs(cqt::pad_rows(tu, 20) - ref) < 1e-14);

  const Correction e = rng.correction(6, 8, 2);
  const Correction et = cqt::corr_times_toeplitz(e, a);
  const Matrix ref2 = e.dense(6, 20) * oracle::toeplitz(oracle::coeff_map(a), 20, 20);
  CHECK(oracle::max_abs(et.dense(6, 20) - ref2) < 1e-14);
  CHECK(et.cols() == 8 + 4);
}
