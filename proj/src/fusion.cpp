#include "twsm/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace twsm {

DisparityMap decision_select(const DisparityMap& sm_map, const DisparityMap& side_map,
                             const Rect& rect) {
    if (sm_map.height() != side_map.height() || sm_map.width() != side_map.width())
        throw std::invalid_argument("decision_select: shape mismatch");
    DisparityMap out = side_map;
    for (int y = rect.row0; y < rect.row0 + rect.height; ++y) {
        for (int x = rect.col0; x < rect.col0 + rect.width; ++x) {
            if (!sm_map.is_valid(y, x))
                throw std::runtime_error("decision_select: stereo map not dense on the rect");
            out.set(y, x, sm_map.value(y, x));
        }
    }
    return out;
}

namespace {

std::vector<SparseSample> draw_samples(const DisparityMap& map,
                                       const std::vector<std::pair<int, int>>& pixels,
                                       long long count, std::mt19937_64& rng) {
    if (count > static_cast<long long>(pixels.size()))
        throw std::runtime_error("sparse_sample: requested count exceeds available pixels");
    std::vector<size_t> idx(pixels.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    // Partial Fisher-Yates: only the first `count` slots are needed.
    for (long long i = 0; i < count; ++i) {
        std::uniform_int_distribution<size_t> pick(i, idx.size() - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    std::vector<SparseSample> out;
    out.reserve(count);
    for (long long i = 0; i < count; ++i) {
        const auto [y, x] = pixels[idx[i]];
        out.push_back({y, x, map.value(y, x)});
    }
    return out;
}

}  // namespace

SparseDisparity sparse_sample(const DisparityMap& center_map, const DisparityMap* surround_map,
                              const TeleWideGeometry& geom, const FusionConfig& cfg,
                              uint64_t seed) {
    if (cfg.rate_center < 0.0 || cfg.rate_center > 1.0 || cfg.rate_surround < 0.0 ||
        cfg.rate_surround > 1.0)
        throw std::invalid_argument("sparse_sample: rates must lie in [0,1]");
    const Rect& rect = geom.center_rect;

    std::vector<std::pair<int, int>> center_px, surround_px;
    for (int y = 0; y < geom.wide_height; ++y)
        for (int x = 0; x < geom.wide_width; ++x)
            (rect.contains(y, x) ? center_px : surround_px).emplace_back(y, x);

    for (const auto& [y, x] : center_px)
        if (!center_map.is_valid(y, x))
            throw std::runtime_error("sparse_sample: center map not dense on the rect");

    SparseDisparity sd;
    sd.height = geom.wide_height;
    sd.width = geom.wide_width;
    sd.seed = seed;
    sd.source_center = "center";

    std::mt19937_64 rng(seed);
    const long long n_center = std::llround(cfg.rate_center * center_px.size());
    sd.samples = draw_samples(center_map, center_px, n_center, rng);

    if (surround_map) {
        sd.source_surround = "surround";
        const long long n_sur = std::llround(cfg.rate_surround * surround_px.size());
        auto extra = draw_samples(*surround_map, surround_px, n_sur, rng);
        sd.samples.insert(sd.samples.end(), extra.begin(), extra.end());
    }
    return sd;
}

bool in_boundary_strip(int row, int col, const Rect& rect, int strip_width) {
    if (strip_width <= 0 || rect.empty()) return false;
    const int r1 = rect.row0 + rect.height - 1;
    const int c1 = rect.col0 + rect.width - 1;
    int dist;
    if (rect.contains(row, col)) {
        dist = std::min({row - rect.row0, r1 - row, col - rect.col0, c1 - col});
    } else {
        const int dy = std::max({rect.row0 - row, row - r1, 0});
        const int dx = std::max({rect.col0 - col, col - c1, 0});
        dist = std::max(dy, dx);
    }
    return dist < strip_width;
}

DisparityMap smooth_boundary_strip(const DisparityMap& merged, const ImagePlane& wide_rgb,
                                   const Rect& rect, const FusionConfig& cfg) {
    if (!merged.all_valid())
        throw std::invalid_argument("smooth_boundary_strip: merged map must be dense");
    if (cfg.strip_width < 0)
        throw std::invalid_argument("smooth_boundary_strip: negative strip width");
    if (cfg.strip_width == 0) return merged;

    Grid<float> smoothed = fgs_smooth(merged.values(), wide_rgb, cfg.fgs);
    DisparityMap out = merged;
    for (int y = 0; y < merged.height(); ++y)
        for (int x = 0; x < merged.width(); ++x)
            if (in_boundary_strip(y, x, rect, cfg.strip_width)) out.set(y, x, smoothed.at(y, x));
    return out;
}

std::string serialize_sparse(const SparseDisparity& sd) {
    std::ostringstream os;
    os << "TWSPARSE " << sd.height << ' ' << sd.width << ' ' << sd.samples.size() << ' '
       << sd.seed << '\n';
    for (const auto& s : sd.samples) os << s.row << ' ' << s.col << ' ' << s.value << '\n';
    return os.str();
}

SparseDisparity parse_sparse(const std::string& text) {
    std::istringstream is(text);
    std::string magic;
    SparseDisparity sd;
    size_t n = 0;
    if (!(is >> magic >> sd.height >> sd.width >> n >> sd.seed) || magic != "TWSPARSE")
        throw std::runtime_error("parse_sparse: bad header");
    sd.samples.resize(n);
    for (size_t i = 0; i < n; ++i)
        if (!(is >> sd.samples[i].row >> sd.samples[i].col >> sd.samples[i].value))
            throw std::runtime_error("parse_sparse: truncated sample list");
    return sd;
}

}  // namespace twsm
