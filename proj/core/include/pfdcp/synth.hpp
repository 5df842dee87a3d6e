#pragma once

#include <optional>

#include "pfdcp/dcp.hpp"
#include "pfdcp/image.hpp"

namespace pfdcp {

/// Forward haze model inputs: I = J*t + A*(1-t). Either a constant
/// transmission or a full map.
struct SynthSpec {
    Atmosphere atmosphere;
    double t_const = 1.0;
    std::optional<TransmissionMap> t_map;
};

/// Applies the forward model per pixel and channel. The result is a convex
/// combination of J and A, so no clamping is needed.
RgbImage synthesize_haze(const RgbImage& clear, const SynthSpec& spec);

}  // namespace pfdcp
