#pragma once

#include <utility>

#include "twsm/core.hpp"

namespace twsm {

// Containment of the tele FOV inside the wide FOV plus the camera constants
// needed for disparity/depth conversion.
struct TeleWideGeometry {
    double zoom = 2.0;           // tele magnification Z relative to wide
    int wide_height = 0;
    int wide_width = 0;
    Rect center_rect;            // tele FOV footprint at wide resolution
    double focal_px = 700.0;     // F
    double baseline_m = 0.5;     // B

    static TeleWideGeometry make(int wide_height, int wide_width, double zoom,
                                 double focal_px = 700.0, double baseline_m = 0.5);
};

// Centered crop of a Z-times zoom inside the given frame, floor rounding for
// both size and offset.
Rect center_rect(int wide_height, int wide_width, double zoom);

// Resamples an intensity image to a new shape (bilinear).
ImagePlane resample_image(const ImagePlane& img, int new_height, int new_width);

// Resamples a disparity grid to a new shape (nearest-neighbor, mask-aware).
// Value scaling for the changed pixel pitch is the caller's job.
DisparityMap resample_disparity(const DisparityMap& map, int new_height, int new_width);

// Multiplies every valid disparity by `factor`; the grid itself is untouched.
DisparityMap scale_disparity(const DisparityMap& map, double factor);

struct StereoPair {
    ImagePlane left;
    ImagePlane right;
};

// Wide-geometry input pair: left is the wide image; right is the tele image
// brought to wide pixel pitch and zero-padded outside the center rect.
// The tele image is accepted at tele-native resolution (wide shape) or already
// at wide pitch (center rect shape); the mode is inferred from its shape.
StereoPair make_wide_pair(const ImagePlane& wide, const ImagePlane& tele,
                          const TeleWideGeometry& geom);

// Tele-geometry input pair at tele-native resolution: right is the tele image
// (upsampled by Z when given at crop resolution); left is the wide image
// cropped to the center rect and upsampled to match.
StereoPair make_tele_pair(const ImagePlane& wide, const ImagePlane& tele,
                          const TeleWideGeometry& geom);

}  // namespace twsm
