#pragma once

#include <string>

#include "pfdcp/image.hpp"

namespace pfdcp {

/// Reads a PNG or JPEG image. 8-bit samples map to [0,1] by /255, 16-bit
/// by /65535. Grayscale files are replicated to three channels.
/// Throws std::runtime_error for unreadable or unsupported files.
RgbImage load_image(const std::string& path);

/// Writes an 8-bit PNG. Values are clamped to [0,1] before quantization.
void save_image(const RgbImage& img, const std::string& path);

/// Gray images are written as single-channel 8-bit PNG.
void save_image(const GrayImage& img, const std::string& path);

}  // namespace pfdcp
