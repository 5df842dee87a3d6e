#pragma once

#include "pfdcp/image.hpp"

namespace pfdcp {

struct GuidedFilterParams {
    int radius = 60;
    double eps = 1e-4;
};

/// Edge-preserving smoothing assuming a local linear map from the guide to
/// the output. With m = box mean at the given radius:
///   a = (m(g*p) - m(g)m(p)) / (m(g^2) - m(g)^2 + eps)
///   b = m(p) - a * m(g)
///   out = m(a) * g + m(b)
/// Output is not clamped; transmission-map callers clamp to [0,1].
GrayImage guided_filter(const GrayImage& guide, const GrayImage& input,
                        const GuidedFilterParams& params);

}  // namespace pfdcp
