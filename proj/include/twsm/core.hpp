#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace twsm {

// Axis-aligned pixel rectangle, [row0, row0+height) x [col0, col0+width).
struct Rect {
    int row0 = 0;
    int col0 = 0;
    int height = 0;
    int width = 0;

    bool contains(int row, int col) const {
        return row >= row0 && row < row0 + height && col >= col0 && col < col0 + width;
    }
    long long area() const { return static_cast<long long>(height) * width; }
    bool empty() const { return height <= 0 || width <= 0; }
    bool operator==(const Rect&) const = default;
};

template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(int height, int width, T fill = T{})
        : height_(height), width_(width), data_(static_cast<size_t>(height) * width, fill) {
        if (height < 0 || width < 0) throw std::invalid_argument("Grid: negative shape");
    }

    int height() const { return height_; }
    int width() const { return width_; }
    size_t size() const { return data_.size(); }

    T& at(int row, int col) { return data_[static_cast<size_t>(row) * width_ + col]; }
    const T& at(int row, int col) const { return data_[static_cast<size_t>(row) * width_ + col]; }

    bool in_bounds(int row, int col) const {
        return row >= 0 && row < height_ && col >= 0 && col < width_;
    }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    bool operator==(const Grid&) const = default;

private:
    int height_ = 0;
    int width_ = 0;
    std::vector<T> data_;
};

// H x W x C raster of intensities, nominal range [0,1], interleaved channels.
class ImagePlane {
public:
    ImagePlane() = default;
    ImagePlane(int height, int width, int channels = 1, float fill = 0.f)
        : height_(height), width_(width), channels_(channels),
          data_(static_cast<size_t>(height) * width * channels, fill) {
        if (height <= 0 || width <= 0 || channels <= 0)
            throw std::invalid_argument("ImagePlane: non-positive shape");
    }

    int height() const { return height_; }
    int width() const { return width_; }
    int channels() const { return channels_; }

    float& at(int row, int col, int ch = 0) {
        return data_[(static_cast<size_t>(row) * width_ + col) * channels_ + ch];
    }
    float at(int row, int col, int ch = 0) const {
        return data_[(static_cast<size_t>(row) * width_ + col) * channels_ + ch];
    }

    // Channel-mean intensity at a pixel.
    float luma(int row, int col) const {
        double s = 0.0;
        for (int c = 0; c < channels_; ++c) s += at(row, col, c);
        return static_cast<float>(s / channels_);
    }

    // Single-channel view (channel means) of a multi-channel image.
    ImagePlane to_gray() const;

    std::vector<float>& data() { return data_; }
    const std::vector<float>& data() const { return data_; }

    bool same_shape(const ImagePlane& o) const {
        return height_ == o.height_ && width_ == o.width_ && channels_ == o.channels_;
    }
    bool operator==(const ImagePlane&) const = default;

private:
    int height_ = 0;
    int width_ = 0;
    int channels_ = 1;
    std::vector<float> data_;
};

enum class ResolutionTag { wide, tele };

// Dense disparity grid with an explicit per-pixel validity mask.
// Values are horizontal pixel offsets at the tagged resolution.
class DisparityMap {
public:
    DisparityMap() = default;
    DisparityMap(int height, int width, ResolutionTag tag = ResolutionTag::wide)
        : values_(height, width, 0.f), valid_(height, width, uint8_t{0}), tag_(tag) {}

    int height() const { return values_.height(); }
    int width() const { return values_.width(); }
    ResolutionTag resolution() const { return tag_; }
    void set_resolution(ResolutionTag tag) { tag_ = tag; }

    float value(int row, int col) const { return values_.at(row, col); }
    bool is_valid(int row, int col) const { return valid_.at(row, col) != 0; }

    void set(int row, int col, float v) {
        values_.at(row, col) = v;
        valid_.at(row, col) = 1;
    }
    void invalidate(int row, int col) {
        values_.at(row, col) = 0.f;
        valid_.at(row, col) = 0;
    }

    Grid<float>& values() { return values_; }
    const Grid<float>& values() const { return values_; }
    Grid<uint8_t>& valid() { return valid_; }
    const Grid<uint8_t>& valid() const { return valid_; }

    size_t valid_count() const {
        size_t n = 0;
        for (uint8_t v : valid_.data()) n += (v != 0);
        return n;
    }
    bool all_valid() const { return valid_count() == valid_.size(); }

    bool operator==(const DisparityMap&) const = default;

private:
    Grid<float> values_;
    Grid<uint8_t> valid_;
    ResolutionTag tag_ = ResolutionTag::wide;
};

}  // namespace twsm
