#include "twsm/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "twsm/io.hpp"
#include "twsm/regression.hpp"

namespace twsm {

namespace {

std::string metric_name(CostMetric m) { return m == CostMetric::sad ? "sad" : "census"; }

CostMetric metric_from(const std::string& s) {
    if (s == "sad") return CostMetric::sad;
    if (s == "census") return CostMetric::census;
    throw std::invalid_argument("config: unknown metric '" + s + "'");
}

std::string kernel_name(BokehKernel k) { return k == BokehKernel::disc ? "disc" : "gaussian"; }

BokehKernel kernel_from(const std::string& s) {
    if (s == "disc") return BokehKernel::disc;
    if (s == "gaussian") return BokehKernel::gaussian;
    throw std::invalid_argument("config: unknown bokeh kernel '" + s + "'");
}

}  // namespace

std::string PipelineConfig::to_text() const {
    std::ostringstream os;
    os << "zoom=" << zoom << '\n'
       << "focal_px=" << focal_px << '\n'
       << "baseline_m=" << baseline_m << '\n'
       << "metric=" << metric_name(matching.metric) << '\n'
       << "metric_window=" << matching.window << '\n'
       << "dmax=" << dmax << '\n'
       << "box_radius=" << box_radius << '\n'
       << "sgm_p1=" << sgm.p1 << '\n'
       << "sgm_p2=" << sgm.p2 << '\n'
       << "sgm_paths=" << sgm.paths << '\n'
       << "temperature=" << temperature << '\n'
       << "rate_center=" << fusion.rate_center << '\n'
       << "rate_surround=" << fusion.rate_surround << '\n'
       << "strip_width=" << fusion.strip_width << '\n'
       << "fgs_lambda=" << fusion.fgs.lambda << '\n'
       << "fgs_sigma=" << fusion.fgs.sigma << '\n'
       << "fgs_iterations=" << fusion.fgs.iterations << '\n'
       << "surround_lambda=" << surround_fgs.lambda << '\n'
       << "surround_sigma=" << surround_fgs.sigma << '\n'
       << "surround_iterations=" << surround_fgs.iterations << '\n'
       << "bokeh_rmax=" << bokeh.r_max << '\n'
       << "bokeh_drange=" << bokeh.d_range << '\n'
       << "bokeh_kernel=" << kernel_name(bokeh.kernel) << '\n'
       << "bokeh_clamp=" << (bokeh.clamp_negative ? 1 : 0) << '\n'
       << "seed=" << seed << '\n';
    return os.str();
}

PipelineConfig PipelineConfig::from_text(const std::string& text) {
    PipelineConfig cfg;
    for (const auto& [key, value] : parse_key_value(text)) {
        std::istringstream vs(value);
        auto num = [&](auto& field) {
            if (!(vs >> field)) throw std::invalid_argument("config: bad value for " + key);
        };
        if (key == "zoom") num(cfg.zoom);
        else if (key == "focal_px") num(cfg.focal_px);
        else if (key == "baseline_m") num(cfg.baseline_m);
        else if (key == "metric") cfg.matching.metric = metric_from(value);
        else if (key == "metric_window") num(cfg.matching.window);
        else if (key == "dmax") num(cfg.dmax);
        else if (key == "box_radius") num(cfg.box_radius);
        else if (key == "sgm_p1") num(cfg.sgm.p1);
        else if (key == "sgm_p2") num(cfg.sgm.p2);
        else if (key == "sgm_paths") num(cfg.sgm.paths);
        else if (key == "temperature") num(cfg.temperature);
        else if (key == "rate_center") num(cfg.fusion.rate_center);
        else if (key == "rate_surround") num(cfg.fusion.rate_surround);
        else if (key == "strip_width") num(cfg.fusion.strip_width);
        else if (key == "fgs_lambda") num(cfg.fusion.fgs.lambda);
        else if (key == "fgs_sigma") num(cfg.fusion.fgs.sigma);
        else if (key == "fgs_iterations") num(cfg.fusion.fgs.iterations);
        else if (key == "surround_lambda") num(cfg.surround_fgs.lambda);
        else if (key == "surround_sigma") num(cfg.surround_fgs.sigma);
        else if (key == "surround_iterations") num(cfg.surround_fgs.iterations);
        else if (key == "bokeh_rmax") num(cfg.bokeh.r_max);
        else if (key == "bokeh_drange") num(cfg.bokeh.d_range);
        else if (key == "bokeh_kernel") cfg.bokeh.kernel = kernel_from(value);
        else if (key == "bokeh_clamp") {
            int flag = 0;
            num(flag);
            cfg.bokeh.clamp_negative = flag != 0;
        } else if (key == "seed") num(cfg.seed);
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    if (cfg.zoom < 1.0) throw std::invalid_argument("config: zoom must be >= 1");
    if (cfg.dmax < 1) throw std::invalid_argument("config: dmax must be >= 1");
    if (cfg.temperature <= 0.0) throw std::invalid_argument("config: temperature must be > 0");
    return cfg;
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

EstimateResult estimate_disparity(const ImagePlane& wide, const ImagePlane& tele,
                                  EstimateMode mode, const PipelineConfig& cfg) {
    EstimateResult result;
    result.geom = TeleWideGeometry::make(wide.height(), wide.width(), cfg.zoom, cfg.focal_px,
                                         cfg.baseline_m);

    CostVolume cv;
    if (mode == EstimateMode::wide) {
        StereoPair pair = make_wide_pair(wide, tele, result.geom);
        cv = build_cost_volume(pair.left, pair.right, cfg.dmax, cfg.matching,
                               result.geom.center_rect);
    } else {
        StereoPair pair = make_tele_pair(wide, tele, result.geom);
        cv = build_cost_volume(pair.left, pair.right, cfg.dmax, cfg.matching);
    }
    if (cfg.box_radius > 0) cv = box_aggregate(cv, cfg.box_radius);
    CostVolume aggregated = sgm_aggregate(cv, cfg.sgm);

    result.wta_map = wta(aggregated);
    result.disparity = soft_argmax(softmax_probs(aggregated, cfg.temperature));
    const ResolutionTag tag = mode == EstimateMode::wide ? ResolutionTag::wide
                                                         : ResolutionTag::tele;
    result.wta_map.set_resolution(tag);
    result.disparity.set_resolution(tag);
    return result;
}

DisparityMap tele_to_wide_frame(const DisparityMap& tele_disp, const TeleWideGeometry& geom) {
    const Rect& rect = geom.center_rect;
    DisparityMap scaled = scale_disparity(tele_disp, 1.0 / geom.zoom);
    DisparityMap patch = resample_disparity(scaled, rect.height, rect.width);
    DisparityMap out(geom.wide_height, geom.wide_width, ResolutionTag::wide);
    for (int y = 0; y < rect.height; ++y)
        for (int x = 0; x < rect.width; ++x)
            if (patch.is_valid(y, x))
                out.set(rect.row0 + y, rect.col0 + x, patch.value(y, x));
    return out;
}

TeleWideScene synth_telewide(const ImagePlane& left, const ImagePlane& right,
                             const DisparityMap& gt, double zoom) {
    if (!left.same_shape(right)) throw std::invalid_argument("synth_telewide: shape mismatch");
    if (left.height() < 2 || left.width() < 2)
        throw std::invalid_argument("synth_telewide: frame smaller than 2x2");
    const Rect rect = center_rect(left.height(), left.width(), zoom);

    TeleWideScene scene;
    scene.wide = left;
    scene.tele = ImagePlane(rect.height, rect.width, right.channels());
    for (int y = 0; y < rect.height; ++y)
        for (int x = 0; x < rect.width; ++x)
            for (int c = 0; c < right.channels(); ++c)
                scene.tele.at(y, x, c) = right.at(rect.row0 + y, rect.col0 + x, c);
    scene.gt = gt;
    return scene;
}

RdsScene gen_rds(int height, int width, const std::function<double(int, int)>& disparity_fn,
                 double dot_density, uint64_t seed) {
    if (height <= 0 || width <= 0) throw std::invalid_argument("gen_rds: bad shape");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    RdsScene scene;
    scene.left = ImagePlane(height, width, 1);
    for (float& v : scene.left.data()) v = unit(rng) < dot_density ? 1.f : 0.f;

    scene.right = ImagePlane(height, width, 1);
    scene.gt = DisparityMap(height, width);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double d = disparity_fn(y, x);
            if (d < 0.0 || d >= width) throw std::invalid_argument("gen_rds: disparity out of range");
            const double src = x + d;
            if (src <= width - 1) {
                const int x0 = static_cast<int>(std::floor(src));
                const double frac = src - x0;
                const float a = scene.left.at(y, x0);
                const float b = scene.left.at(y, std::min(x0 + 1, width - 1));
                scene.right.at(y, x) = static_cast<float>((1.0 - frac) * a + frac * b);
            } else {
                scene.right.at(y, x) = unit(rng) < dot_density ? 1.f : 0.f;
            }
            if (x - d >= 0.0) scene.gt.set(y, x, static_cast<float>(d));
        }
    }
    return scene;
}

}  // namespace twsm
