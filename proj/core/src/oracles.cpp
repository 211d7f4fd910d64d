#include "cqt/oracles.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <vector>

#include "cqt/error.hpp"

namespace cqt {

Vector sine_transform_oracle(Index m, const std::function<cplx(cplx)>& f, Index column,
                             const std::function<cplx(double)>& p) {
  if (m < 1 || column < 0 || column >= m) {
    throw Error(ErrorKind::InvalidArgument, "sine transform oracle: column out of range");
  }
  const double pi = std::numbers::pi;
  const Index period = 2 * (m + 1);
  // sin(k pi / (m + 1)) for k mod 2(m + 1); exact index reduction keeps the
  // argument small.
  std::vector<double> sines(static_cast<std::size_t>(period));
  for (Index k = 0; k < period; ++k) {
    sines[static_cast<std::size_t>(k)] = std::sin(pi * static_cast<double>(k) / static_cast<double>(m + 1));
  }
  auto sine = [&](Index i, Index j) { return sines[static_cast<std::size_t>((i * j) % period)]; };

  const double norm = 2.0 + 2.0 * std::cos(pi / static_cast<double>(m + 1));
  const double inv_len2 = 2.0 / static_cast<double>(m + 1);  // 1 / ||v_j||^2
  const Index c = column + 1;
  Vector out = Vector::Zero(m);
  for (Index j = 1; j <= m; ++j) {
    const double lambda = (2.0 + 2.0 * std::cos(pi * static_cast<double>(j) / static_cast<double>(m + 1))) / norm;
    const cplx weight = f(p ? p(lambda) : cplx{lambda}) * sine(c, j) * inv_len2;
    for (Index i = 1; i <= m; ++i) out(i - 1) += weight * sine(i, j);
  }
  return out;
}

Matrix dense_expm(const Matrix& a) { return a.exp(); }

}  // namespace cqt
