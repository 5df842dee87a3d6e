#pragma once

#include <vector>

#include "pfdcp/dcp.hpp"
#include "pfdcp/image.hpp"

namespace pfdcp {

/// Index 0 is full resolution; each subsequent level halves the previous one.
/// Every level has min(width, height) >= the patch size used to build it.
struct ImagePyramid {
    std::vector<RgbImage> levels;
};

struct FusionWeights {
    double low = 4.0;   // coarser level
    double high = 1.0;  // finer level
};

/// Number of levels produced by build_pyramid for the given dimensions.
int pyramid_level_count(int width, int height, int patch);

/// Repeated halving; stops before producing a level with min dim < patch
/// (or a level that no longer shrinks). Throws when the input itself is
/// smaller than the patch.
ImagePyramid build_pyramid(const RgbImage& img, int patch);

/// Runs the single-level estimator on every level's dark channel and keeps
/// the candidate with the greatest channel sum; ties break toward the finer
/// level.
Atmosphere pf_estimate_atmosphere(const ImagePyramid& pyr,
                                  const DehazeParams& params);

/// fused = (w_low * t_low + w_high * t_high) / (w_low + w_high).
/// t_low must already be upsampled to t_high's dims.
TransmissionMap fuse_transmissions(const TransmissionMap& t_low,
                                   const TransmissionMap& t_high,
                                   const FusionWeights& w);

/// Optional capture of every intermediate map for inspection dumps.
struct PyramidTrace {
    GrayImage dark;                              // level-0 dark channel
    std::vector<TransmissionMap> level_maps;     // refined, per level
    TransmissionMap fused;                       // before final refinement
};

/// Full pyramid-fusion pipeline: build pyramid, shared atmospheric light
/// across levels, per-level estimate + refine, coarse-to-fine weighted
/// fusion, one final full-resolution refinement, recovery. A single-level
/// pyramid reduces bit-identically to dehaze_dcp.
DehazeResult dehaze_pfdcp(const RgbImage& img, const DehazeParams& params,
                          PyramidTrace* trace = nullptr);

}  // namespace pfdcp
