#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pfdcp {

/// RGB scene in normalized intensities [0,1], row-major, 3 samples per pixel.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    RgbImage() = default;
    RgbImage(int w, int h, double fill = 0.0)
        : width(w), height(h), data(check_dims(w, h) * 3, fill) {}

    double& at(int y, int x, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    double at(int y, int x, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * height;
    }

private:
    static std::size_t check_dims(int w, int h) {
        if (w < 1 || h < 1) throw std::invalid_argument("image dimensions must be >= 1");
        return static_cast<std::size_t>(w) * h;
    }
};

/// Single-channel scalar field; carrier for dark channels, transmission maps
/// and guides.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0)
        : width(w), height(h), data(check_dims(w, h), fill) {}

    double& at(int y, int x) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int y, int x) const { return data[static_cast<std::size_t>(y) * width + x]; }
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * height;
    }

private:
    static std::size_t check_dims(int w, int h) {
        if (w < 1 || h < 1) throw std::invalid_argument("image dimensions must be >= 1");
        return static_cast<std::size_t>(w) * h;
    }
};

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

inline bool same_dims(const GrayImage& a, const GrayImage& b) {
    return a.width == b.width && a.height == b.height;
}
inline bool same_dims(const RgbImage& a, const RgbImage& b) {
    return a.width == b.width && a.height == b.height;
}

/// Rec.601 luminance: 0.299 r + 0.587 g + 0.114 b.
GrayImage to_gray(const RgbImage& img);

/// Keeps pixels at even row/column indices; output dims = ceil(in / 2).
/// A 1x1 input is returned unchanged.
RgbImage downsample_half(const RgbImage& img);

/// Nearest-neighbor upsampling: out(y,x) = in(floor(y*in_h/out_h), floor(x*in_w/out_w)).
GrayImage upsample_nearest(const GrayImage& img, int out_w, int out_h);

}  // namespace pfdcp
