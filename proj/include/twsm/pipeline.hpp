#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "twsm/bokeh.hpp"
#include "twsm/cost.hpp"
#include "twsm/fusion.hpp"
#include "twsm/geometry.hpp"
#include "twsm/sgm.hpp"
#include "twsm/surround.hpp"

namespace twsm {

// Everything a pipeline run needs, serializable as flat key=value text.
struct PipelineConfig {
    double zoom = 2.0;
    double focal_px = 700.0;
    double baseline_m = 0.5;
    MatchingCosts matching{CostMetric::census, 5};
    int dmax = 64;
    int box_radius = 0;
    SgmParams sgm{10.f, 120.f, 8};
    double temperature = 1.0;
    FusionConfig fusion;
    FgsParams surround_fgs{400.0, 0.07, 3};
    BokehParams bokeh;
    uint64_t seed = 0;

    static PipelineConfig from_text(const std::string& text);  // rejects unknown keys
    static PipelineConfig from_file(const std::string& path);
    std::string to_text() const;
};

enum class EstimateMode { tele, wide };

struct EstimateResult {
    DisparityMap disparity;   // soft-argmax readout at the matching resolution
    DisparityMap wta_map;     // integer winner-take-all readout
    TeleWideGeometry geom;
};

// Geometry construction -> cost volume -> SGM -> soft-argmax, for either
// input geometry. Tele mode outputs at tele-native resolution; wide mode at
// wide resolution with the surround invalid.
EstimateResult estimate_disparity(const ImagePlane& wide, const ImagePlane& tele,
                                  EstimateMode mode, const PipelineConfig& cfg);

// Rescales a tele-resolution estimate into the wide frame: value scaling by
// 1/Z, grid resampling to the center rect, surround invalid.
DisparityMap tele_to_wide_frame(const DisparityMap& tele_disp, const TeleWideGeometry& geom);

struct TeleWideScene {
    ImagePlane wide;
    ImagePlane tele;
    DisparityMap gt;
};

// Dataset protocol: wide = left unchanged, tele = center crop of the right
// image, ground truth stays wide-referenced.
TeleWideScene synth_telewide(const ImagePlane& left, const ImagePlane& right,
                             const DisparityMap& gt, double zoom);

struct RdsScene {
    ImagePlane left;
    ImagePlane right;
    DisparityMap gt;
};

// Random-dot stereogram with a left-referenced disparity field. Pixels whose
// correspondence falls outside the right frame get random fill and invalid gt.
RdsScene gen_rds(int height, int width, const std::function<double(int, int)>& disparity_fn,
                 double dot_density, uint64_t seed);

}  // namespace twsm
