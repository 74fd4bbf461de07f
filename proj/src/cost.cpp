#include "twsm/cost.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace twsm {

float metric_max_cost(const MatchingCosts& metric) {
    const float area = static_cast<float>(metric.window) * metric.window;
    return metric.metric == CostMetric::sad ? area : area - 1.f;
}

CensusPlane census_transform(const ImagePlane& gray, int window) {
    if (window % 2 == 0 || window < 3 || window > 7)
        throw std::invalid_argument("census_transform: window must be odd, in [3,7]");
    if (gray.channels() != 1)
        throw std::invalid_argument("census_transform: grayscale input required");
    const int h = gray.height(), w = gray.width(), r = window / 2;
    CensusPlane out{h, w, window, Grid<uint64_t>(h, w, 0)};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const float center = gray.at(y, x);
            uint64_t code = 0;
            int bit = 0;
            for (int dy = -r; dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) {
                    if (dy == 0 && dx == 0) continue;
                    int ny = std::clamp(y + dy, 0, h - 1);
                    int nx = std::clamp(x + dx, 0, w - 1);
                    if (gray.at(ny, nx) < center) code |= (uint64_t{1} << bit);
                    ++bit;
                }
            }
            out.codes.at(y, x) = code;
        }
    }
    return out;
}

namespace {

float sad_cost(const ImagePlane& a, int ay, int ax, const ImagePlane& b, int by, int bx,
               int window) {
    const int r = window / 2;
    float acc = 0.f;
    for (int dy = -r; dy <= r; ++dy) {
        int ya = std::clamp(ay + dy, 0, a.height() - 1);
        int yb = std::clamp(by + dy, 0, b.height() - 1);
        for (int dx = -r; dx <= r; ++dx) {
            int xa = std::clamp(ax + dx, 0, a.width() - 1);
            int xb = std::clamp(bx + dx, 0, b.width() - 1);
            acc += std::abs(a.at(ya, xa) - b.at(yb, xb));
        }
    }
    return acc;
}

}  // namespace

CostVolume build_cost_volume(const ImagePlane& ref, const ImagePlane& other, int dmax,
                             const MatchingCosts& metric, std::optional<Rect> valid_other,
                             MatchDirection direction) {
    if (!ref.same_shape(other))
        throw std::invalid_argument("build_cost_volume: image shapes differ");
    if (dmax < 1 || dmax >= ref.width())
        throw std::invalid_argument("build_cost_volume: dmax out of range");

    const int h = ref.height(), w = ref.width();
    const float sentinel = metric_max_cost(metric);
    CostVolume cv(dmax, h, w, sentinel);
    cv.set_sentinel(sentinel);

    ImagePlane ref_gray, other_gray;
    CensusPlane census_ref, census_other;
    if (metric.metric == CostMetric::census) {
        ref_gray = ref.to_gray();
        other_gray = other.to_gray();
        census_ref = census_transform(ref_gray, metric.window);
        census_other = census_transform(other_gray, metric.window);
    }

    auto usable = [&](int y, int x) {
        if (x < 0 || x >= w) return false;
        return !valid_other || valid_other->contains(y, x);
    };
    const int step = direction == MatchDirection::left_ref ? -1 : 1;

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            bool any = false;
            if (usable(y, x)) {
                for (int d = 0; d < dmax; ++d) {
                    int xo = x + step * d;
                    if (!usable(y, xo)) continue;
                    any = true;
                    if (metric.metric == CostMetric::sad) {
                        cv.at(d, y, x) = sad_cost(ref, y, x, other, y, xo, metric.window);
                    } else {
                        uint64_t diff = census_ref.codes.at(y, x) ^ census_other.codes.at(y, xo);
                        cv.at(d, y, x) = static_cast<float>(std::popcount(diff));
                    }
                }
            }
            cv.valid().at(y, x) = any ? 1 : 0;
            if (!any)
                for (int d = 0; d < dmax; ++d) cv.at(d, y, x) = sentinel;
        }
    }
    return cv;
}

CostVolume box_aggregate(const CostVolume& cv, int radius) {
    if (radius < 0) throw std::invalid_argument("box_aggregate: negative radius");
    if (radius == 0) return cv;
    const int h = cv.height(), w = cv.width();
    CostVolume out(cv.dmax(), h, w, cv.sentinel());
    out.set_sentinel(cv.sentinel());
    out.valid() = cv.valid();
    for (int d = 0; d < cv.dmax(); ++d) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (!cv.is_valid(y, x)) {
                    out.at(d, y, x) = cv.at(d, y, x);
                    continue;
                }
                double acc = 0.0;
                int n = 0;
                for (int dy = -radius; dy <= radius; ++dy) {
                    int ny = std::clamp(y + dy, 0, h - 1);
                    for (int dx = -radius; dx <= radius; ++dx) {
                        int nx = std::clamp(x + dx, 0, w - 1);
                        if (!cv.is_valid(ny, nx)) continue;
                        acc += cv.at(d, ny, nx);
                        ++n;
                    }
                }
                out.at(d, y, x) = n > 0 ? static_cast<float>(acc / n) : cv.at(d, y, x);
            }
        }
    }
    return out;
}

}  // namespace twsm
