#include "pfdcp/image.hpp"

namespace pfdcp {

GrayImage to_gray(const RgbImage& img) {
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        const double* p = &img.data[i * 3];
        out.data[i] = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
    }
    return out;
}

RgbImage downsample_half(const RgbImage& img) {
    if (img.width == 1 && img.height == 1) return img;
    const int ow = (img.width + 1) / 2;
    const int oh = (img.height + 1) / 2;
    RgbImage out(ow, oh);
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x)
            for (int c = 0; c < 3; ++c)
                out.at(y, x, c) = img.at(2 * y, 2 * x, c);
    return out;
}

GrayImage upsample_nearest(const GrayImage& img, int out_w, int out_h) {
    if (out_w < 1 || out_h < 1)
        throw std::invalid_argument("upsample_nearest: zero target dimension");
    if (out_w < img.width || out_h < img.height)
        throw std::invalid_argument("upsample_nearest: target smaller than source");
    GrayImage out(out_w, out_h);
    for (int y = 0; y < out_h; ++y) {
        const int sy = static_cast<int>(static_cast<std::int64_t>(y) * img.height / out_h);
        for (int x = 0; x < out_w; ++x) {
            const int sx = static_cast<int>(static_cast<std::int64_t>(x) * img.width / out_w);
            out.at(y, x) = img.at(sy, sx);
        }
    }
    return out;
}

}  // namespace pfdcp
