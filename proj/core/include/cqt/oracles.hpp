#pragma once

#include <functional>

#include "cqt/config.hpp"

namespace cqt {

using Index = Eigen::Index;

/// Column `column` (0-based) of f(p(H)) for H = trid(1, 2, 1) / (2 + 2 cos(pi / (m + 1))),
/// summed over the sine-transform eigenpairs of H in O(m) per output entry:
/// lambda_j = (2 + 2 cos(j pi / (m + 1))) / (2 + 2 cos(pi / (m + 1))),
/// v_j(i) = sin(i j pi / (m + 1)).  `p` defaults to the identity.
Vector sine_transform_oracle(Index m, const std::function<cplx(cplx)>& f, Index column,
                             const std::function<cplx(double)>& p = {});

/// Dense exp by scaling and squaring with Pade approximation.
Matrix dense_expm(const Matrix& a);

}  // namespace cqt
