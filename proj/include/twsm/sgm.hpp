#pragma once

#include "twsm/cost.hpp"

namespace twsm {

struct SgmParams {
    float p1 = 10.f;   // small-change penalty
    float p2 = 120.f;  // large-change penalty, must be >= p1
    int paths = 8;     // 4 or 8
};

// Semi-global path aggregation: sums the standard SGM scanline recurrence over
// 4 or 8 one-dimensional paths. Invalid pixels carry their sentinel costs
// through unchanged and stay flagged invalid.
CostVolume sgm_aggregate(const CostVolume& cv, const SgmParams& params);

// Winner-take-all readout: per-pixel argmin over bins, ties to the smallest
// disparity; validity copied from the cost volume.
DisparityMap wta(const CostVolume& cv);

// Invalidates pixels failing the left-right check
// |d_left(y,x) - d_right(y, x - round(d_left(y,x)))| <= tol.
DisparityMap lr_consistency(const DisparityMap& d_left, const DisparityMap& d_right, float tol);

// Fills invalid pixels with the smaller of the nearest valid disparities along
// the row (background-preferring); rows with no valid pixel take the global
// median of valid disparities.
DisparityMap fill_invalid(const DisparityMap& d);

}  // namespace twsm
