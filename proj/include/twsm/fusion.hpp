#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twsm/fgs.hpp"
#include "twsm/geometry.hpp"

namespace twsm {

struct SparseSample {
    int row = 0;
    int col = 0;
    float value = 0.f;
};

// Random subsample of one or two disparity maps, for feeding estimators that
// take a sparse disparity input channel.
struct SparseDisparity {
    int height = 0;
    int width = 0;
    uint64_t seed = 0;
    std::vector<SparseSample> samples;
    std::string source_center;
    std::string source_surround;
};

struct FusionConfig {
    double rate_center = 0.20;
    double rate_surround = 0.12;
    int strip_width = 8;
    FgsParams fgs{900.0, 0.07, 3};
};

// Composes the output map from the stereo-matched result inside `rect` and
// the surround source elsewhere; bit-exact copies, no blending.
DisparityMap decision_select(const DisparityMap& sm_map, const DisparityMap& side_map,
                             const Rect& rect);

// Draws round(rate_center * |center|) samples from the center region and,
// when a surround map is given, round(rate_surround * |surround|) samples
// from the surround; uniform, without replacement, deterministic per seed.
SparseDisparity sparse_sample(const DisparityMap& center_map, const DisparityMap* surround_map,
                              const TeleWideGeometry& geom, const FusionConfig& cfg,
                              uint64_t seed);

// Smooths the full merged map with the edge-guided smoother, then keeps the
// filtered values only on the strip of pixels whose Chebyshev distance to the
// rect border is below strip_width (either side); all other pixels are
// bit-identical to the input.
DisparityMap smooth_boundary_strip(const DisparityMap& merged, const ImagePlane& wide_rgb,
                                   const Rect& rect, const FusionConfig& cfg);

// True iff the pixel lies on the replacement strip around the rect border.
bool in_boundary_strip(int row, int col, const Rect& rect, int strip_width);

std::string serialize_sparse(const SparseDisparity& sd);
SparseDisparity parse_sparse(const std::string& text);

}  // namespace twsm
