// twsm: tele-wide stereo matching pipeline CLI.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "twsm/io.hpp"
#include "twsm/metrics.hpp"
#include "twsm/pipeline.hpp"
#include "twsm/regression.hpp"

namespace fs = std::filesystem;
using namespace twsm;

namespace {

constexpr int kExitMissingFile = 2;
constexpr int kExitBadConfig = 3;
constexpr int kExitComputeFailure = 4;

struct CliError : std::runtime_error {
    int code;
    CliError(int code, const std::string& msg) : std::runtime_error(msg), code(code) {}
};

void require_file(const std::string& path) {
    if (!fs::exists(path)) throw CliError(kExitMissingFile, "missing file: " + path);
}

PipelineConfig load_config(const std::string& path) {
    if (path.empty()) return PipelineConfig{};
    require_file(path);
    try {
        return PipelineConfig::from_file(path);
    } catch (const std::exception& e) {
        throw CliError(kExitBadConfig, e.what());
    }
}

void write_disparity(const std::string& path, const DisparityMap& map) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".png")
        write_disp_png(path, map);
    else
        write_pfm_disparity(path, map);
}

FocusPoint parse_focus(const std::string& spec) {
    const auto comma = spec.find(',');
    if (comma == std::string::npos)
        throw CliError(kExitBadConfig, "focus point must be R,C: " + spec);
    FocusPoint fp;
    fp.row = std::stoi(spec.substr(0, comma));
    fp.col = std::stoi(spec.substr(comma + 1));
    return fp;
}

// Disparity field spec: "const:<v>" or "ramp:<a>,<b>" (linear in x).
std::function<double(int, int)> parse_disp_fn(const std::string& spec, int width) {
    if (spec.rfind("const:", 0) == 0) {
        const double v = std::stod(spec.substr(6));
        return [v](int, int) { return v; };
    }
    if (spec.rfind("ramp:", 0) == 0) {
        const std::string args = spec.substr(5);
        const auto comma = args.find(',');
        if (comma == std::string::npos)
            throw CliError(kExitBadConfig, "ramp needs two values: " + spec);
        const double a = std::stod(args.substr(0, comma));
        const double b = std::stod(args.substr(comma + 1));
        return [a, b, width](int, int x) {
            return width > 1 ? a + (b - a) * x / (width - 1) : a;
        };
    }
    throw CliError(kExitBadConfig, "unknown disparity spec: " + spec);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tele-wide stereo matching pipeline"};
    app.require_subcommand(1);

    // estimate
    std::string left_path, tele_path, mode_str = "wide", config_path, out_path;
    bool wide_frame = false;
    auto* est = app.add_subcommand("estimate", "Disparity from a tele-wide pair");
    est->add_option("--left", left_path, "Left wide image")->required();
    est->add_option("--tele", tele_path, "Right tele image")->required();
    est->add_option("--mode", mode_str, "tele or wide")->check(CLI::IsMember({"tele", "wide"}));
    est->add_option("--config", config_path, "Config file");
    est->add_option("--out", out_path, "Output disparity (PFM or 16-bit PNG)")->required();
    est->add_flag("--wide-frame", wide_frame,
                  "Rescale a tele-mode result into the wide frame before writing");

    // surround
    std::string center_disp_path, wide_path, external_path;
    auto* sur = app.add_subcommand("surround", "Fill the surround region of a center map");
    sur->add_option("--center-disp", center_disp_path, "Center disparity map")->required();
    sur->add_option("--wide", wide_path, "Wide guidance image")->required();
    sur->add_option("--out", out_path, "Output disparity")->required();
    sur->add_option("--external", external_path, "Externally estimated full-frame map");
    sur->add_option("--config", config_path, "Config file");

    // fuse
    std::string sm_path, side_path;
    auto* fuse = app.add_subcommand("fuse", "Decision selection plus boundary-strip smoothing");
    fuse->add_option("--sm", sm_path, "Stereo-matched disparity map")->required();
    fuse->add_option("--side", side_path, "Surround (single-image style) disparity map")
        ->required();
    fuse->add_option("--wide", wide_path, "Wide guidance image")->required();
    fuse->add_option("--config", config_path, "Config file");
    fuse->add_option("--out", out_path, "Output disparity")->required();

    // sample
    std::string map_path, surround_map_path;
    uint64_t seed_opt = 0;
    bool seed_given = false;
    auto* sample = app.add_subcommand("sample", "Sparse disparity sampling");
    sample->add_option("--map", map_path, "Center disparity source")->required();
    sample->add_option("--surround-map", surround_map_path, "Surround disparity source");
    sample->add_option("--config", config_path, "Config file");
    sample->add_option("--seed", seed_opt, "Sampling seed")->each([&](const std::string&) {
        seed_given = true;
    });
    sample->add_option("--out", out_path, "Output TWSPARSE file")->required();

    // bokeh
    std::string disp_path, focus_spec;
    auto* bok = app.add_subcommand("bokeh", "Disparity post-processing and Bokeh rendering");
    bok->add_option("--wide", wide_path, "Wide image")->required();
    bok->add_option("--disp", disp_path, "Dense disparity map")->required();
    bok->add_option("--focus", focus_spec, "Focus point R,C")->required();
    bok->add_option("--config", config_path, "Config file");
    bok->add_option("--out", out_path, "Output image")->required();

    // eval
    std::string est_path, gt_path, metric_str = "outlier";
    auto* ev = app.add_subcommand("eval", "Region evaluation report");
    ev->add_option("--est", est_path, "Estimated disparity")->required();
    ev->add_option("--gt", gt_path, "Ground-truth disparity")->required();
    ev->add_option("--config", config_path, "Config file");
    ev->add_option("--metric", metric_str, "outlier or epe")
        ->check(CLI::IsMember({"outlier", "epe"}));

    // synth
    std::string right_path, gt_in_path, out_dir;
    auto* synth = app.add_subcommand("synth", "Tele-wide scene from a standard stereo pair");
    synth->add_option("--left", left_path, "Left image")->required();
    synth->add_option("--right", right_path, "Right image")->required();
    synth->add_option("--gt", gt_in_path, "Ground-truth disparity")->required();
    synth->add_option("--config", config_path, "Config file");
    synth->add_option("--out-dir", out_dir, "Output directory")->required();

    // gen-rds
    std::string shape_spec = "128x256", disp_spec = "const:10";
    double density = 0.5;
    auto* rds = app.add_subcommand("gen-rds", "Random-dot stereogram test scene");
    rds->add_option("--shape", shape_spec, "HxW");
    rds->add_option("--disp", disp_spec, "const:<v> or ramp:<a>,<b>");
    rds->add_option("--density", density, "Dot density in [0,1]");
    rds->add_option("--seed", seed_opt, "Scene seed")->each([&](const std::string&) {
        seed_given = true;
    });
    rds->add_option("--out-dir", out_dir, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const PipelineConfig cfg = load_config(config_path);

        if (est->parsed()) {
            require_file(left_path);
            require_file(tele_path);
            const ImagePlane wide = read_image(left_path);
            const ImagePlane tele = read_image(tele_path);
            const EstimateMode mode =
                mode_str == "tele" ? EstimateMode::tele : EstimateMode::wide;
            EstimateResult result = estimate_disparity(wide, tele, mode, cfg);
            DisparityMap out = result.disparity;
            if (wide_frame && mode == EstimateMode::tele)
                out = tele_to_wide_frame(out, result.geom);
            write_disparity(out_path, out);
        } else if (sur->parsed()) {
            require_file(center_disp_path);
            require_file(wide_path);
            const ImagePlane wide = read_image(wide_path);
            const TeleWideGeometry geom = TeleWideGeometry::make(
                wide.height(), wide.width(), cfg.zoom, cfg.focal_px, cfg.baseline_m);
            DisparityMap out;
            if (!external_path.empty()) {
                require_file(external_path);
                out = load_external_surround(external_path, wide.height(), wide.width());
            } else {
                const DisparityMap center = read_disparity_auto(center_disp_path);
                out = extrapolate_surround(center, wide, geom, cfg.surround_fgs);
            }
            write_disparity(out_path, out);
        } else if (fuse->parsed()) {
            require_file(sm_path);
            require_file(side_path);
            require_file(wide_path);
            const DisparityMap sm = read_disparity_auto(sm_path);
            const DisparityMap side = read_disparity_auto(side_path);
            const ImagePlane wide = read_image(wide_path);
            const Rect rect = center_rect(sm.height(), sm.width(), cfg.zoom);
            DisparityMap merged = decision_select(sm, side, rect);
            merged = smooth_boundary_strip(merged, wide, rect, cfg.fusion);
            write_disparity(out_path, merged);
        } else if (sample->parsed()) {
            require_file(map_path);
            const DisparityMap center = read_disparity_auto(map_path);
            const TeleWideGeometry geom = TeleWideGeometry::make(
                center.height(), center.width(), cfg.zoom, cfg.focal_px, cfg.baseline_m);
            DisparityMap surround_src;
            const DisparityMap* surround_ptr = nullptr;
            if (!surround_map_path.empty()) {
                require_file(surround_map_path);
                surround_src = read_disparity_auto(surround_map_path);
                surround_ptr = &surround_src;
            }
            const uint64_t seed = seed_given ? seed_opt : cfg.seed;
            SparseDisparity sd = sparse_sample(center, surround_ptr, geom, cfg.fusion, seed);
            std::ofstream out(out_path);
            if (!out) throw CliError(kExitComputeFailure, "cannot write " + out_path);
            out << serialize_sparse(sd);
        } else if (bok->parsed()) {
            require_file(wide_path);
            require_file(disp_path);
            const ImagePlane wide = read_image(wide_path);
            const DisparityMap disp = read_disparity_auto(disp_path);
            const FocusPoint fp = parse_focus(focus_spec);
            const DisparityMap d_pp = postprocess_for_bokeh(disp, fp, cfg.bokeh.clamp_negative);
            const ImagePlane rendered = render_bokeh(wide, d_pp, fp, cfg.bokeh);
            write_image(out_path, rendered);
        } else if (ev->parsed()) {
            require_file(est_path);
            require_file(gt_path);
            const DisparityMap est_map = read_disparity_auto(est_path);
            const DisparityMap gt_map = read_disparity_auto(gt_path);
            const Rect rect = center_rect(gt_map.height(), gt_map.width(), cfg.zoom);
            const EvalMetric metric =
                metric_str == "epe" ? EvalMetric::epe : EvalMetric::outlier;
            const RegionReport report = region_report(est_map, gt_map, rect, metric);
            std::cout << report_table(report, "estimate") << report_csv(report) << '\n';
        } else if (synth->parsed()) {
            require_file(left_path);
            require_file(right_path);
            require_file(gt_in_path);
            const ImagePlane left = read_image(left_path);
            const ImagePlane right = read_image(right_path);
            const DisparityMap gt = read_disparity_auto(gt_in_path);
            TeleWideScene scene = synth_telewide(left, right, gt, cfg.zoom);
            fs::create_directories(out_dir);
            write_image(out_dir + "/wide.png", scene.wide);
            write_image(out_dir + "/tele.png", scene.tele);
            write_pfm_disparity(out_dir + "/gt.pfm", scene.gt);
        } else if (rds->parsed()) {
            const auto xpos = shape_spec.find('x');
            if (xpos == std::string::npos)
                throw CliError(kExitBadConfig, "shape must be HxW: " + shape_spec);
            const int h = std::stoi(shape_spec.substr(0, xpos));
            const int w = std::stoi(shape_spec.substr(xpos + 1));
            const uint64_t seed = seed_given ? seed_opt : cfg.seed;
            RdsScene scene = gen_rds(h, w, parse_disp_fn(disp_spec, w), density, seed);
            fs::create_directories(out_dir);
            write_image(out_dir + "/left.png", scene.left);
            write_image(out_dir + "/right.png", scene.right);
            write_pfm_disparity(out_dir + "/gt.pfm", scene.gt);
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitComputeFailure;
    }
    return 0;
}
