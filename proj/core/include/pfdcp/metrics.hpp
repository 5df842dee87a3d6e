#pragma once

#include <string>

#include "pfdcp/image.hpp"

namespace pfdcp {

struct EvalRecord {
    std::string image_id;
    double psnr = 0.0;
    double ssim = 0.0;
    double wall_ms = 0.0;
};

/// 10 * log10(1 / MSE) with MSE over all channels and pixels in [0,1] scale.
/// Identical images return +infinity.
double psnr(const RgbImage& a, const RgbImage& b);

/// Single-scale SSIM: 11x11 Gaussian window (sigma 1.5), K1=0.01, K2=0.03,
/// dynamic range 1, mean over windows fully inside the image. By default the
/// three channel scores are averaged; luminance_only scores Rec.601 luma.
/// Requires min dim >= 11.
double ssim(const RgbImage& a, const RgbImage& b, bool luminance_only = false);

}  // namespace pfdcp
