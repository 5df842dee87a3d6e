#include "pfdcp/guided_filter.hpp"

#include "pfdcp/filters.hpp"

namespace pfdcp {

GrayImage guided_filter(const GrayImage& guide, const GrayImage& input,
                        const GuidedFilterParams& params) {
    if (!same_dims(guide, input))
        throw std::invalid_argument("guided_filter: dimension mismatch");
    if (params.radius < 1)
        throw std::invalid_argument("guided_filter: radius must be >= 1");
    if (!(params.eps > 0.0))
        throw std::invalid_argument("guided_filter: eps must be > 0");

    const std::size_t n = guide.data.size();
    GrayImage gg(guide.width, guide.height);
    GrayImage gp(guide.width, guide.height);
    for (std::size_t i = 0; i < n; ++i) {
        gg.data[i] = guide.data[i] * guide.data[i];
        gp.data[i] = guide.data[i] * input.data[i];
    }

    const GrayImage mean_g = box_filter(guide, params.radius);
    const GrayImage mean_p = box_filter(input, params.radius);
    const GrayImage mean_gg = box_filter(gg, params.radius);
    const GrayImage mean_gp = box_filter(gp, params.radius);

    GrayImage a(guide.width, guide.height);
    GrayImage b(guide.width, guide.height);
    for (std::size_t i = 0; i < n; ++i) {
        const double cov = mean_gp.data[i] - mean_g.data[i] * mean_p.data[i];
        const double var = mean_gg.data[i] - mean_g.data[i] * mean_g.data[i];
        a.data[i] = cov / (var + params.eps);
        b.data[i] = mean_p.data[i] - a.data[i] * mean_g.data[i];
    }

    const GrayImage mean_a = box_filter(a, params.radius);
    const GrayImage mean_b = box_filter(b, params.radius);

    GrayImage out(guide.width, guide.height);
    for (std::size_t i = 0; i < n; ++i)
        out.data[i] = mean_a.data[i] * guide.data[i] + mean_b.data[i];
    return out;
}

}  // namespace pfdcp
