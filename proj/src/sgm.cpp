#include "twsm/sgm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twsm {

namespace {

struct PathDir {
    int dy;
    int dx;
};

// One directional sweep of the SGM recurrence, accumulated into `total`.
void sweep_path(const CostVolume& cv, const SgmParams& params, PathDir dir,
                std::vector<float>& total) {
    const int h = cv.height(), w = cv.width(), dmax = cv.dmax();
    std::vector<float> lr(static_cast<size_t>(h) * w * dmax);
    auto lr_at = [&](int y, int x, int d) -> float& {
        return lr[(static_cast<size_t>(y) * w + x) * dmax + d];
    };

    // Traverse so that the predecessor (y - dy, x - dx) is already done.
    const int y_begin = dir.dy >= 0 ? 0 : h - 1;
    const int y_end = dir.dy >= 0 ? h : -1;
    const int y_step = dir.dy >= 0 ? 1 : -1;
    const int x_begin = dir.dx >= 0 ? 0 : w - 1;
    const int x_end = dir.dx >= 0 ? w : -1;
    const int x_step = dir.dx >= 0 ? 1 : -1;

    for (int y = y_begin; y != y_end; y += y_step) {
        for (int x = x_begin; x != x_end; x += x_step) {
            const int py = y - dir.dy, px = x - dir.dx;
            if (py < 0 || py >= h || px < 0 || px >= w) {
                for (int d = 0; d < dmax; ++d) lr_at(y, x, d) = cv.at(d, y, x);
                continue;
            }
            float prev_min = std::numeric_limits<float>::infinity();
            for (int d = 0; d < dmax; ++d) prev_min = std::min(prev_min, lr_at(py, px, d));
            for (int d = 0; d < dmax; ++d) {
                float best = lr_at(py, px, d);
                if (d > 0) best = std::min(best, lr_at(py, px, d - 1) + params.p1);
                if (d + 1 < dmax) best = std::min(best, lr_at(py, px, d + 1) + params.p1);
                best = std::min(best, prev_min + params.p2);
                lr_at(y, x, d) = cv.at(d, y, x) + best - prev_min;
            }
        }
    }

    for (size_t i = 0; i < lr.size(); ++i) total[i] += lr[i];
}

}  // namespace

CostVolume sgm_aggregate(const CostVolume& cv, const SgmParams& params) {
    if (params.p2 < params.p1) throw std::invalid_argument("sgm_aggregate: p2 must be >= p1");
    if (params.paths != 4 && params.paths != 8)
        throw std::invalid_argument("sgm_aggregate: paths must be 4 or 8");

    static constexpr PathDir kDirs[8] = {{0, 1}, {0, -1}, {1, 0}, {-1, 0},
                                         {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    const int h = cv.height(), w = cv.width(), dmax = cv.dmax();
    std::vector<float> total(static_cast<size_t>(h) * w * dmax, 0.f);
    for (int p = 0; p < params.paths; ++p) sweep_path(cv, params, kDirs[p], total);

    CostVolume out(dmax, h, w);
    out.set_sentinel(cv.sentinel() * params.paths);
    out.valid() = cv.valid();
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int d = 0; d < dmax; ++d)
                out.at(d, y, x) = total[(static_cast<size_t>(y) * w + x) * dmax + d];
    return out;
}

DisparityMap wta(const CostVolume& cv) {
    DisparityMap out(cv.height(), cv.width());
    for (int y = 0; y < cv.height(); ++y) {
        for (int x = 0; x < cv.width(); ++x) {
            if (!cv.is_valid(y, x)) continue;
            int best = 0;
            float best_cost = cv.at(0, y, x);
            for (int d = 1; d < cv.dmax(); ++d) {
                if (cv.at(d, y, x) < best_cost) {
                    best_cost = cv.at(d, y, x);
                    best = d;
                }
            }
            out.set(y, x, static_cast<float>(best));
        }
    }
    return out;
}

DisparityMap lr_consistency(const DisparityMap& d_left, const DisparityMap& d_right, float tol) {
    if (d_left.height() != d_right.height() || d_left.width() != d_right.width())
        throw std::invalid_argument("lr_consistency: shape mismatch");
    DisparityMap out = d_left;
    for (int y = 0; y < d_left.height(); ++y) {
        for (int x = 0; x < d_left.width(); ++x) {
            if (!d_left.is_valid(y, x)) continue;
            const float dl = d_left.value(y, x);
            const int xr = x - static_cast<int>(std::lround(dl));
            bool keep = false;
            if (xr >= 0 && xr < d_right.width() && d_right.is_valid(y, xr))
                keep = std::abs(dl - d_right.value(y, xr)) <= tol;
            if (!keep) out.invalidate(y, x);
        }
    }
    return out;
}

DisparityMap fill_invalid(const DisparityMap& d) {
    std::vector<float> all_valid;
    for (int y = 0; y < d.height(); ++y)
        for (int x = 0; x < d.width(); ++x)
            if (d.is_valid(y, x)) all_valid.push_back(d.value(y, x));
    if (all_valid.empty()) throw std::runtime_error("fill_invalid: fully invalid map");
    std::nth_element(all_valid.begin(), all_valid.begin() + all_valid.size() / 2,
                     all_valid.end());
    const float median = all_valid[all_valid.size() / 2];

    DisparityMap out = d;
    for (int y = 0; y < d.height(); ++y) {
        for (int x = 0; x < d.width(); ++x) {
            if (d.is_valid(y, x)) continue;
            float left = std::numeric_limits<float>::infinity();
            float right = std::numeric_limits<float>::infinity();
            for (int xl = x - 1; xl >= 0; --xl)
                if (d.is_valid(y, xl)) {
                    left = d.value(y, xl);
                    break;
                }
            for (int xr = x + 1; xr < d.width(); ++xr)
                if (d.is_valid(y, xr)) {
                    right = d.value(y, xr);
                    break;
                }
            float fill = std::min(left, right);
            if (!std::isfinite(fill)) fill = median;
            out.set(y, x, fill);
        }
    }
    return out;
}

}  // namespace twsm
