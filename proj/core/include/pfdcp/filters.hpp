#pragma once

#include "pfdcp/image.hpp"

namespace pfdcp {

/// Windowed minimum over a patch x patch neighborhood centered at each pixel,
/// window clipped at image borders. patch must be odd and >= 1.
/// Separable sliding-window-minimum, O(n) per row/column.
GrayImage min_filter(const GrayImage& img, int patch);

/// Mean over the (2r+1)^2 window clipped at borders; normalization uses the
/// actual clipped window pixel count. Summed-area table, double accumulation.
GrayImage box_filter(const GrayImage& img, int radius);

}  // namespace pfdcp
