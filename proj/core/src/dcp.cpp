#include "pfdcp/dcp.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "pfdcp/guided_filter.hpp"

namespace pfdcp {

void DehazeParams::validate() const {
    if (patch < 1 || patch % 2 == 0)
        throw std::invalid_argument("patch must be odd and >= 1");
    if (!(top_fraction > 0.0 && top_fraction <= 1.0))
        throw std::invalid_argument("top_fraction must be in (0,1]");
    if (!(omega >= 0.0 && omega <= 1.0))
        throw std::invalid_argument("omega must be in [0,1]");
    if (!(t0 > 0.0 && t0 < 1.0))
        throw std::invalid_argument("t0 must be in (0,1)");
    if (fusion_low_weight < 0.0 || fusion_high_weight < 0.0 ||
        fusion_low_weight + fusion_high_weight <= 0.0)
        throw std::invalid_argument("fusion weights must be nonnegative and not both zero");
    if (gf_radius < 1) throw std::invalid_argument("gf_radius must be >= 1");
    if (!(gf_eps > 0.0)) throw std::invalid_argument("gf_eps must be > 0");
}

GrayImage dark_channel(const RgbImage& img, int patch) {
    GrayImage channel_min(img.width, img.height);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        const double* p = &img.data[i * 3];
        channel_min.data[i] = std::min({p[0], p[1], p[2]});
    }
    return min_filter(channel_min, patch);
}

Atmosphere estimate_atmosphere(const RgbImage& img, const GrayImage& dark,
                               double top_fraction) {
    if (img.width != dark.width || img.height != dark.height)
        throw std::invalid_argument("estimate_atmosphere: dimension mismatch");
    if (!(top_fraction > 0.0 && top_fraction <= 1.0))
        throw std::invalid_argument("estimate_atmosphere: top_fraction out of range");

    const std::size_t n = img.pixel_count();
    const std::size_t k = std::max<std::size_t>(
        1, static_cast<std::size_t>(top_fraction * static_cast<double>(n)));

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::partial_sort(idx.begin(), idx.begin() + k, idx.end(),
                      [&dark](std::size_t a, std::size_t b) {
                          if (dark.data[a] != dark.data[b])
                              return dark.data[a] > dark.data[b];
                          return a < b;
                      });

    std::size_t best = idx[0];
    double best_sum = -1.0;
    for (std::size_t j = 0; j < k; ++j) {
        const double* p = &img.data[idx[j] * 3];
        const double sum = p[0] + p[1] + p[2];
        if (sum > best_sum || (sum == best_sum && idx[j] < best)) {
            best_sum = sum;
            best = idx[j];
        }
    }

    const double* p = &img.data[best * 3];
    Atmosphere a;
    a.r = std::clamp(p[0], 0.05, 1.0);
    a.g = std::clamp(p[1], 0.05, 1.0);
    a.b = std::clamp(p[2], 0.05, 1.0);
    return a;
}

TransmissionMap estimate_transmission(const RgbImage& img, const Atmosphere& a,
                                      const DehazeParams& params) {
    if (!(a.r > 0.0 && a.g > 0.0 && a.b > 0.0))
        throw std::invalid_argument("estimate_transmission: nonpositive atmosphere channel");

    GrayImage ratio(img.width, img.height);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        const double* p = &img.data[i * 3];
        ratio.data[i] = std::min({p[0] / a.r, p[1] / a.g, p[2] / a.b});
    }
    GrayImage m = min_filter(ratio, params.patch);

    TransmissionMap t(img.width, img.height);
    for (std::size_t i = 0; i < t.data.size(); ++i)
        t.data[i] = clamp01(1.0 - params.omega * m.data[i]);
    return t;
}

RgbImage recover(const RgbImage& img, const Atmosphere& a,
                 const TransmissionMap& t, double t0) {
    if (img.width != t.width || img.height != t.height)
        throw std::invalid_argument("recover: dimension mismatch");
    if (!(t0 > 0.0 && t0 < 1.0))
        throw std::invalid_argument("recover: t0 must be in (0,1)");

    const double ac[3] = {a.r, a.g, a.b};
    RgbImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        const double tt = std::max(t.data[i], t0);
        for (int c = 0; c < 3; ++c) {
            // t = 1 must reproduce I exactly, without round-off from A
            const double v = img.data[i * 3 + c];
            out.data[i * 3 + c] =
                tt == 1.0 ? clamp01(v) : clamp01((v - ac[c]) / tt + ac[c]);
        }
    }
    return out;
}

DehazeResult dehaze_dcp(const RgbImage& img, const DehazeParams& params) {
    params.validate();
    const GrayImage dark = dark_channel(img, params.patch);
    const Atmosphere a = estimate_atmosphere(img, dark, params.top_fraction);
    TransmissionMap t = estimate_transmission(img, a, params);

    const GrayImage guide = to_gray(img);
    t = guided_filter(guide, t, {params.gf_radius, params.gf_eps});
    for (double& v : t.data) v = clamp01(v);

    DehazeResult res;
    res.image = recover(img, a, t, params.t0);
    res.transmission = std::move(t);
    res.atmosphere = a;
    return res;
}

}  // namespace pfdcp
