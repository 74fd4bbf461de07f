#pragma once

#include "twsm/core.hpp"

namespace twsm {

struct FocusPoint {
    int row = 0;
    int col = 0;
};

struct ComponentLabels {
    Grid<int> labels;  // 0 = background, 1..count = component ids
    int count = 0;
};

enum class BokehKernel { disc, gaussian };

struct BokehParams {
    double r_max = 12.0;     // maximum blur radius in pixels
    double d_range = 0.0;    // disparity span for normalization; 0 = auto (max-min)
    BokehKernel kernel = BokehKernel::disc;
    bool clamp_negative = true;  // clamp the literal suppression formula at 0
};

// Foreground test: 0.7 d(fp) <= d(x,y) <= 1.3 d(fp), inclusive both ends.
Grid<uint8_t> foreground_mask(const DisparityMap& d, const FocusPoint& fp);

// 4-connected labeling; ids assigned in raster order of each component's
// first pixel.
ComponentLabels connected_components(const Grid<uint8_t>& mask);

// Exact Euclidean distance to the nearest non-foreground pixel (zero there).
Grid<float> distance_to_nonforeground(const ComponentLabels& labels);

// Suppresses foreground components other than the one containing the focus
// point: d' = d * (1 - 2p) / p on those pixels, clamped at zero unless
// params.clamp_negative is off. Everything else is unchanged.
DisparityMap suppress_nonfocus(const DisparityMap& d, const ComponentLabels& labels,
                               int focus_component, const Grid<float>& p,
                               bool clamp_negative = true);

// Depth-dependent blur: per-pixel radius r_max * min(1, |d' - d'(fp)| / d_range),
// rendered from a stack of uniformly blurred layers at integer radii.
ImagePlane render_bokeh(const ImagePlane& rgb, const DisparityMap& d_pp, const FocusPoint& fp,
                        const BokehParams& params);

// Algorithm-1 pipeline: mask -> components -> distance transform -> suppress.
DisparityMap postprocess_for_bokeh(const DisparityMap& d, const FocusPoint& fp,
                                   bool clamp_negative = true);

}  // namespace twsm
