#pragma once

#include <span>

#include "cqt/config.hpp"

namespace cqt::detail {

/// In-place unnormalized DFT with kernel exp(+2 pi i jk / n): turns wrapped
/// coefficients into values at the n-th roots of unity.
void dft_evaluate(std::span<cplx> data);

/// In-place DFT with kernel exp(-2 pi i jk / n), scaled by 1/n: inverse of
/// dft_evaluate.
void dft_interpolate(std::span<cplx> data);

}  // namespace cqt::detail
