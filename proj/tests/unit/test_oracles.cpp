#include "doctest.h"

#include <cmath>
#include <numbers>

#include "cqt/bench.hpp"
#include "cqt/error.hpp"
#include "cqt/oracles.hpp"
#include "support/dense_funm.hpp"

using oracle::Matrix;

namespace {

Matrix scaled_laplacian(long m) {
  const double s = 2.0 + 2.0 * std::cos(std::numbers::pi / static_cast<double>(m + 1));
  Matrix h = Matrix::Zero(m, m);
  for (long i = 0; i < m; ++i) {
    h(i, i) = 2.0 / s;
    if (i + 1 < m) h(i, i + 1) = h(i + 1, i) = 1.0 / s;
  }
  return h;
}

// f(H) by a Hermitian eigendecomposition of the dense matrix.
template <class F>
Matrix hermitian_funm(const Matrix& h, F f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  oracle::Vector d(h.rows());
  for (long i = 0; i < h.rows(); ++i) d(i) = f(es.eigenvalues()(i));
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

TEST_CASE("sine oracle reproduces H itself") {
  const Matrix h = scaled_laplacian(3);
  for (long c = 0; c < 3; ++c) {
    const auto col = cqt::sine_transform_oracle(3, [](oracle::cplx z) { return z; }, c);
    CHECK((col - h.col(c)).norm() < 1e-15);
  }
  CHECK_THROWS_AS(cqt::sine_transform_oracle(3, [](oracle::cplx z) { return z; }, 3), cqt::Error);
}

TEST_CASE("sine oracle for exp of H^10 matches a dense eigensolver") {
  const long m = 100;
  Matrix h10 = scaled_laplacian(m);
  const Matrix h = h10;
  for (int i = 1; i < 10; ++i) h10 = h10 * h;
  const Matrix ref = hermitian_funm(h10, [](double x) { return std::exp(x); });
  for (long c : {0L, 37L, 99L}) {
    const auto col = cqt::sine_transform_oracle(
        m, [](oracle::cplx z) { return std::exp(z); }, c,
        [](double l) { return oracle::cplx{std::pow(l, 10)}; });
    CHECK((col - ref.col(c)).norm() < 1e-11);
  }
}

TEST_CASE("laplacian power builder") {
  const cqt::ToleranceConfig cfg;
  Matrix ref = scaled_laplacian(30);
  const Matrix h = ref;
  for (int i = 1; i < 4; ++i) ref = ref * h;
  CHECK(oracle::max_abs(oracle::dense(cqt::laplacian_power(30, 4, cfg)) - ref) < 1e-14);
  CHECK_THROWS_AS(cqt::laplacian_power(1, 2, cfg), cqt::Error);
}
