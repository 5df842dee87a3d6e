#pragma once

#include "pfdcp/filters.hpp"
#include "pfdcp/image.hpp"

namespace pfdcp {

/// Global airlight estimate. Channels are strictly positive (divisor in the
/// transmission estimate).
struct Atmosphere {
    double r = 1.0;
    double g = 1.0;
    double b = 1.0;

    double intensity() const { return r + g + b; }
};

using TransmissionMap = GrayImage;

struct DehazeParams {
    int patch = 15;
    double top_fraction = 0.001;
    double omega = 0.95;
    double t0 = 0.1;
    double fusion_low_weight = 4.0;   // coarser level
    double fusion_high_weight = 1.0;  // finer level
    int gf_radius = 60;
    double gf_eps = 1e-4;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

/// Per-pixel channel minimum followed by the windowed spatial minimum.
GrayImage dark_channel(const RgbImage& img, int patch);

/// Among the K = max(1, floor(top_fraction * H * W)) pixels with the highest
/// dark-channel value, returns the RGB of the pixel with the highest channel
/// sum in img. Ties break toward the smallest row-major index. Channels are
/// floored at 0.05.
Atmosphere estimate_atmosphere(const RgbImage& img, const GrayImage& dark,
                               double top_fraction);

/// t(x) = 1 - omega * min over the patch window of the per-channel minimum of
/// I^c(y) / A^c, clamped to [0,1].
TransmissionMap estimate_transmission(const RgbImage& img, const Atmosphere& a,
                                      const DehazeParams& params);

/// J(x) = (I(x) - A) / max(t(x), t0) + A, clamped to [0,1] per channel.
RgbImage recover(const RgbImage& img, const Atmosphere& a,
                 const TransmissionMap& t, double t0);

struct DehazeResult {
    RgbImage image;
    TransmissionMap transmission;
    Atmosphere atmosphere;
};

/// Classic single-level pipeline: dark channel, atmospheric light,
/// transmission estimate, guided-filter refinement (gray guide), recovery.
DehazeResult dehaze_dcp(const RgbImage& img, const DehazeParams& params);

}  // namespace pfdcp
