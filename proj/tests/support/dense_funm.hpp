#pragma once

// Dense references for matrix functions, independent of the library.

#include <unsupported/Eigen/MatrixFunctions>

#include "support/oracle.hpp"

namespace oracle {

inline Matrix expm(const Matrix& a) { return a.exp(); }

}  // namespace oracle
