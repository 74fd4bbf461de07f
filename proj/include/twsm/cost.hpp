#pragma once

#include <cstdint>
#include <optional>

#include "twsm/core.hpp"

namespace twsm {

// Per-pixel census descriptor: bit k set iff the k-th window neighbor is
// darker than the center (win*win - 1 bits, raster order, center skipped).
struct CensusPlane {
    int height = 0;
    int width = 0;
    int window = 0;
    Grid<uint64_t> codes;
};

CensusPlane census_transform(const ImagePlane& gray, int window);

enum class CostMetric { sad, census };

struct MatchingCosts {
    CostMetric metric = CostMetric::census;
    int window = 5;
};

enum class MatchDirection { left_ref, right_ref };

// D x H x W stack of matching costs, lower is better. Pixels with no usable
// disparity candidate carry the metric's maximum cost at every bin and are
// flagged invalid. Bin j holds the cost of integer disparity j (0..dmax-1).
class CostVolume {
public:
    CostVolume() = default;
    CostVolume(int dmax, int height, int width, float fill = 0.f)
        : dmax_(dmax), height_(height), width_(width),
          costs_(static_cast<size_t>(dmax) * height * width, fill),
          valid_(height, width, uint8_t{1}) {}

    int dmax() const { return dmax_; }
    int height() const { return height_; }
    int width() const { return width_; }

    float& at(int d, int row, int col) {
        return costs_[(static_cast<size_t>(d) * height_ + row) * width_ + col];
    }
    float at(int d, int row, int col) const {
        return costs_[(static_cast<size_t>(d) * height_ + row) * width_ + col];
    }

    bool is_valid(int row, int col) const { return valid_.at(row, col) != 0; }
    Grid<uint8_t>& valid() { return valid_; }
    const Grid<uint8_t>& valid() const { return valid_; }

    float sentinel() const { return sentinel_; }
    void set_sentinel(float s) { sentinel_ = s; }

    std::vector<float>& data() { return costs_; }
    const std::vector<float>& data() const { return costs_; }

private:
    int dmax_ = 0;
    int height_ = 0;
    int width_ = 0;
    std::vector<float> costs_;
    Grid<uint8_t> valid_;
    float sentinel_ = 0.f;
};

// Builds the cost volume for a rectified pair. For left_ref, bin d compares
// ref(y,x) against other(y,x-d); for right_ref the lookup is x+d. When
// valid_other is given it bounds the usable region in both frames (the
// zero-padded tele case); lookups outside it, or outside the image, get the
// sentinel cost.
CostVolume build_cost_volume(const ImagePlane& ref, const ImagePlane& other, int dmax,
                             const MatchingCosts& metric,
                             std::optional<Rect> valid_other = std::nullopt,
                             MatchDirection direction = MatchDirection::left_ref);

// Per-bin 2D box mean with edge replication; sentinel samples are left out of
// the mean (renormalized by the count of contributing samples).
CostVolume box_aggregate(const CostVolume& cv, int radius);

float metric_max_cost(const MatchingCosts& metric);

}  // namespace twsm
