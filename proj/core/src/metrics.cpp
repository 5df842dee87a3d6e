#include "pfdcp/metrics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pfdcp {

double psnr(const RgbImage& a, const RgbImage& b) {
    if (!same_dims(a, b))
        throw std::invalid_argument("psnr: dimension mismatch");
    double se = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const double d = a.data[i] - b.data[i];
        se += d * d;
    }
    if (se == 0.0) return std::numeric_limits<double>::infinity();
    const double mse = se / static_cast<double>(a.data.size());
    return 10.0 * std::log10(1.0 / mse);
}

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;  // (K1 * L)^2
constexpr double kC2 = 0.03 * 0.03;  // (K2 * L)^2

std::array<double, kWindow> gaussian_kernel() {
    std::array<double, kWindow> k{};
    double sum = 0.0;
    for (int i = 0; i < kWindow; ++i) {
        const double d = i - kWindow / 2;
        k[i] = std::exp(-d * d / (2.0 * kSigma * kSigma));
        sum += k[i];
    }
    for (double& v : k) v /= sum;
    return k;
}

// Separable Gaussian convolution, valid mode: output (h-10) x (w-10).
std::vector<double> gauss_valid(const std::vector<double>& img, int w, int h) {
    static const std::array<double, kWindow> kernel = gaussian_kernel();
    const int ow = w - kWindow + 1;
    const int oh = h - kWindow + 1;
    std::vector<double> rows(static_cast<std::size_t>(ow) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < ow; ++x) {
            double s = 0.0;
            for (int i = 0; i < kWindow; ++i)
                s += kernel[i] * img[static_cast<std::size_t>(y) * w + x + i];
            rows[static_cast<std::size_t>(y) * ow + x] = s;
        }
    std::vector<double> out(static_cast<std::size_t>(ow) * oh);
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x) {
            double s = 0.0;
            for (int i = 0; i < kWindow; ++i)
                s += kernel[i] * rows[static_cast<std::size_t>(y + i) * ow + x];
            out[static_cast<std::size_t>(y) * ow + x] = s;
        }
    return out;
}

double ssim_plane(const std::vector<double>& a, const std::vector<double>& b,
                  int w, int h) {
    std::vector<double> aa(a.size()), bb(a.size()), ab(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        aa[i] = a[i] * a[i];
        bb[i] = b[i] * b[i];
        ab[i] = a[i] * b[i];
    }
    const std::vector<double> mu_a = gauss_valid(a, w, h);
    const std::vector<double> mu_b = gauss_valid(b, w, h);
    const std::vector<double> m_aa = gauss_valid(aa, w, h);
    const std::vector<double> m_bb = gauss_valid(bb, w, h);
    const std::vector<double> m_ab = gauss_valid(ab, w, h);

    double total = 0.0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
        const double va = m_aa[i] - mu_a[i] * mu_a[i];
        const double vb = m_bb[i] - mu_b[i] * mu_b[i];
        const double cov = m_ab[i] - mu_a[i] * mu_b[i];
        total += (2.0 * mu_a[i] * mu_b[i] + kC1) * (2.0 * cov + kC2) /
                 ((mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + kC1) * (va + vb + kC2));
    }
    return total / static_cast<double>(mu_a.size());
}

}  // namespace

double ssim(const RgbImage& a, const RgbImage& b, bool luminance_only) {
    if (!same_dims(a, b))
        throw std::invalid_argument("ssim: dimension mismatch");
    if (a.width < kWindow || a.height < kWindow)
        throw std::invalid_argument("ssim: image smaller than the 11x11 window");

    if (luminance_only) {
        const GrayImage ga = to_gray(a);
        const GrayImage gb = to_gray(b);
        return ssim_plane(ga.data, gb.data, a.width, a.height);
    }

    double sum = 0.0;
    for (int c = 0; c < 3; ++c) {
        std::vector<double> pa(a.pixel_count()), pb(a.pixel_count());
        for (std::size_t i = 0; i < a.pixel_count(); ++i) {
            pa[i] = a.data[i * 3 + c];
            pb[i] = b.data[i * 3 + c];
        }
        sum += ssim_plane(pa, pb, a.width, a.height);
    }
    return sum / 3.0;
}

}  // namespace pfdcp
