#include "pfdcp/pyramid.hpp"

#include <algorithm>

#include "pfdcp/guided_filter.hpp"

namespace pfdcp {

namespace {

int level_radius(int base_radius, int level) {
    if (level == 0) return base_radius;
    return std::max(4, base_radius >> level);
}

TransmissionMap refine_level(const RgbImage& level_img, const TransmissionMap& t,
                             int radius, double eps) {
    TransmissionMap refined =
        guided_filter(to_gray(level_img), t, {radius, eps});
    for (double& v : refined.data) v = clamp01(v);
    return refined;
}

}  // namespace

int pyramid_level_count(int width, int height, int patch) {
    if (std::min(width, height) < patch) return 0;
    int count = 1;
    int w = width, h = height;
    while (true) {
        const int nw = (w + 1) / 2;
        const int nh = (h + 1) / 2;
        if (std::min(nw, nh) < patch) break;
        if (nw == w && nh == h) break;  // 1x1 no longer shrinks
        w = nw;
        h = nh;
        ++count;
    }
    return count;
}

ImagePyramid build_pyramid(const RgbImage& img, int patch) {
    if (patch < 1 || patch % 2 == 0)
        throw std::invalid_argument("build_pyramid: patch must be odd and >= 1");
    if (std::min(img.width, img.height) < patch)
        throw std::invalid_argument("build_pyramid: image smaller than patch");

    const int count = pyramid_level_count(img.width, img.height, patch);
    ImagePyramid pyr;
    pyr.levels.reserve(count);
    pyr.levels.push_back(img);
    for (int k = 1; k < count; ++k)
        pyr.levels.push_back(downsample_half(pyr.levels.back()));
    return pyr;
}

Atmosphere pf_estimate_atmosphere(const ImagePyramid& pyr,
                                  const DehazeParams& params) {
    if (pyr.levels.empty())
        throw std::invalid_argument("pf_estimate_atmosphere: empty pyramid");

    Atmosphere best;
    double best_sum = -1.0;
    for (const RgbImage& level : pyr.levels) {  // finest first, ties keep finer
        const GrayImage dark = dark_channel(level, params.patch);
        const Atmosphere cand =
            estimate_atmosphere(level, dark, params.top_fraction);
        if (cand.intensity() > best_sum) {
            best_sum = cand.intensity();
            best = cand;
        }
    }
    return best;
}

TransmissionMap fuse_transmissions(const TransmissionMap& t_low,
                                   const TransmissionMap& t_high,
                                   const FusionWeights& w) {
    if (!same_dims(t_low, t_high))
        throw std::invalid_argument("fuse_transmissions: dimension mismatch");
    if (w.low < 0.0 || w.high < 0.0 || w.low + w.high <= 0.0)
        throw std::invalid_argument("fuse_transmissions: invalid weights");

    const double denom = w.low + w.high;
    TransmissionMap out(t_high.width, t_high.height);
    for (std::size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = (w.low * t_low.data[i] + w.high * t_high.data[i]) / denom;
    return out;
}

DehazeResult dehaze_pfdcp(const RgbImage& img, const DehazeParams& params,
                          PyramidTrace* trace) {
    params.validate();
    const ImagePyramid pyr = build_pyramid(img, params.patch);
    const int n = static_cast<int>(pyr.levels.size());

    const Atmosphere a = pf_estimate_atmosphere(pyr, params);

    std::vector<TransmissionMap> refined(n);
    for (int k = 0; k < n; ++k) {
        const TransmissionMap t =
            estimate_transmission(pyr.levels[k], a, params);
        refined[k] = refine_level(pyr.levels[k], t,
                                  level_radius(params.gf_radius, k),
                                  params.gf_eps);
    }

    // Coarse-to-fine fold: upsample the running map, fuse with the next
    // finer level's map.
    const FusionWeights weights{params.fusion_low_weight,
                                params.fusion_high_weight};
    TransmissionMap fused = refined[n - 1];
    for (int k = n - 2; k >= 0; --k) {
        const TransmissionMap up = upsample_nearest(
            fused, pyr.levels[k].width, pyr.levels[k].height);
        fused = fuse_transmissions(up, refined[k], weights);
    }

    if (trace) {
        trace->dark = dark_channel(img, params.patch);
        trace->level_maps = refined;
        trace->fused = fused;
    }

    // A single level already received its full-resolution refinement above.
    TransmissionMap final_t = std::move(fused);
    if (n > 1) {
        final_t = guided_filter(to_gray(img), final_t,
                                {params.gf_radius, params.gf_eps});
        for (double& v : final_t.data) v = clamp01(v);
    }

    DehazeResult res;
    res.image = recover(img, a, final_t, params.t0);
    res.transmission = std::move(final_t);
    res.atmosphere = a;
    return res;
}

}  // namespace pfdcp
