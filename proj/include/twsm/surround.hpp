#pragma once

#include <string>

#include "twsm/fgs.hpp"
#include "twsm/geometry.hpp"

namespace twsm {

enum class SurroundKind { external_map, diffusion_baseline };

struct SurroundParams {
    SurroundKind kind = SurroundKind::diffusion_baseline;
    FgsParams diffusion{400.0, 0.07, 3};
    std::string external_path;  // used when kind == external_map
};

// Fills the surround region of a center-only disparity map: each surround
// pixel starts from the disparity of the Euclidean-nearest center-border
// pixel, then the surround is relaxed by the edge-guided smoother with the
// wide image as guidance. Center pixels pass through bit-exactly.
DisparityMap extrapolate_surround(const DisparityMap& center_disp, const ImagePlane& wide_rgb,
                                  const TeleWideGeometry& geom, const FgsParams& params);

// Loads a dense full-frame disparity map (PFM or 16-bit PNG) produced by an
// external estimator.
DisparityMap load_external_surround(const std::string& path, int expected_height,
                                    int expected_width);

}  // namespace twsm
