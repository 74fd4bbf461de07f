#include "twsm/surround.hpp"

#include <cmath>
#include <limits>

#include "twsm/io.hpp"

namespace twsm {

DisparityMap extrapolate_surround(const DisparityMap& center_disp, const ImagePlane& wide_rgb,
                                  const TeleWideGeometry& geom, const FgsParams& params) {
    const Rect& rect = geom.center_rect;
    if (rect.empty()) throw std::invalid_argument("extrapolate_surround: empty center region");
    if (center_disp.height() != geom.wide_height || center_disp.width() != geom.wide_width)
        throw std::invalid_argument("extrapolate_surround: map shape mismatch");
    for (int y = rect.row0; y < rect.row0 + rect.height; ++y)
        for (int x = rect.col0; x < rect.col0 + rect.width; ++x)
            if (!center_disp.is_valid(y, x))
                throw std::invalid_argument("extrapolate_surround: center region not dense");

    const int h = center_disp.height(), w = center_disp.width();
    const int r1 = rect.row0 + rect.height - 1, c1 = rect.col0 + rect.width - 1;

    // Border pixels of the center rect, for the nearest-border initialization.
    std::vector<std::pair<int, int>> border;
    for (int x = rect.col0; x <= c1; ++x) {
        border.emplace_back(rect.row0, x);
        if (r1 != rect.row0) border.emplace_back(r1, x);
    }
    for (int y = rect.row0 + 1; y < r1; ++y) {
        border.emplace_back(y, rect.col0);
        if (c1 != rect.col0) border.emplace_back(y, c1);
    }

    Grid<float> init(h, w);
    Grid<uint8_t> surround_mask(h, w, uint8_t{0});
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (rect.contains(y, x)) {
                init.at(y, x) = center_disp.value(y, x);
                continue;
            }
            surround_mask.at(y, x) = 1;
            long long best = std::numeric_limits<long long>::max();
            float best_val = 0.f;
            for (const auto& [by, bx] : border) {
                const long long dy = y - by, dx = x - bx;
                const long long d2 = dy * dy + dx * dx;
                if (d2 < best) {
                    best = d2;
                    best_val = center_disp.value(by, bx);
                }
            }
            init.at(y, x) = best_val;
        }
    }

    Grid<float> smoothed = fgs_smooth_masked(init, wide_rgb, params, surround_mask);

    DisparityMap out(h, w, center_disp.resolution());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            out.set(y, x, rect.contains(y, x) ? center_disp.value(y, x) : smoothed.at(y, x));
    return out;
}

DisparityMap load_external_surround(const std::string& path, int expected_height,
                                    int expected_width) {
    DisparityMap map = read_disparity_auto(path);
    if (map.height() != expected_height || map.width() != expected_width)
        throw std::runtime_error("load_external_surround: shape mismatch in " + path);
    return map;
}

}  // namespace twsm
