#include "pfdcp/synth.hpp"

namespace pfdcp {

RgbImage synthesize_haze(const RgbImage& clear, const SynthSpec& spec) {
    if (spec.t_map && (spec.t_map->width != clear.width ||
                       spec.t_map->height != clear.height))
        throw std::invalid_argument("synthesize_haze: transmission map dimension mismatch");

    const double ac[3] = {spec.atmosphere.r, spec.atmosphere.g,
                          spec.atmosphere.b};
    RgbImage out(clear.width, clear.height);
    for (std::size_t i = 0; i < clear.pixel_count(); ++i) {
        const double t = spec.t_map ? spec.t_map->data[i] : spec.t_const;
        for (int c = 0; c < 3; ++c)
            out.data[i * 3 + c] =
                clear.data[i * 3 + c] * t + ac[c] * (1.0 - t);
    }
    return out;
}

}  // namespace pfdcp
