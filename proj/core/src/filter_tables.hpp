#pragma once

#include <span>

#include "wavepress/wavelet.hpp"

namespace wavepress::detail {

/// Empty span when (family, order) has no table.
std::span<const double> scaling_filter(Family family, int order);

}  // namespace wavepress::detail
