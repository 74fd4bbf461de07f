#include "twsm/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace twsm {

ImagePlane ImagePlane::to_gray() const {
    if (channels_ == 1) return *this;
    ImagePlane out(height_, width_, 1);
    for (int y = 0; y < height_; ++y)
        for (int x = 0; x < width_; ++x) out.at(y, x) = luma(y, x);
    return out;
}

Rect center_rect(int wide_height, int wide_width, double zoom) {
    if (zoom < 1.0) throw std::invalid_argument("center_rect: zoom must be >= 1");
    if (wide_height <= 0 || wide_width <= 0)
        throw std::invalid_argument("center_rect: non-positive frame shape");
    Rect r;
    r.height = static_cast<int>(std::floor(wide_height / zoom));
    r.width = static_cast<int>(std::floor(wide_width / zoom));
    r.row0 = (wide_height - r.height) / 2;
    r.col0 = (wide_width - r.width) / 2;
    return r;
}

TeleWideGeometry TeleWideGeometry::make(int wide_height, int wide_width, double zoom,
                                        double focal_px, double baseline_m) {
    if (focal_px <= 0.0 || baseline_m <= 0.0)
        throw std::invalid_argument("TeleWideGeometry: F and B must be positive");
    TeleWideGeometry g;
    g.zoom = zoom;
    g.wide_height = wide_height;
    g.wide_width = wide_width;
    g.center_rect = twsm::center_rect(wide_height, wide_width, zoom);
    g.focal_px = focal_px;
    g.baseline_m = baseline_m;
    return g;
}

ImagePlane resample_image(const ImagePlane& img, int new_height, int new_width) {
    if (new_height <= 0 || new_width <= 0)
        throw std::invalid_argument("resample_image: non-positive target shape");
    if (new_height == img.height() && new_width == img.width()) return img;
    ImagePlane out(new_height, new_width, img.channels());
    // Pixel-center alignment; clamped sample positions at the borders.
    const double sy = static_cast<double>(img.height()) / new_height;
    const double sx = static_cast<double>(img.width()) / new_width;
    for (int y = 0; y < new_height; ++y) {
        double fy = (y + 0.5) * sy - 0.5;
        fy = std::clamp(fy, 0.0, static_cast<double>(img.height() - 1));
        int y0 = static_cast<int>(std::floor(fy));
        int y1 = std::min(y0 + 1, img.height() - 1);
        double wy = fy - y0;
        for (int x = 0; x < new_width; ++x) {
            double fx = (x + 0.5) * sx - 0.5;
            fx = std::clamp(fx, 0.0, static_cast<double>(img.width() - 1));
            int x0 = static_cast<int>(std::floor(fx));
            int x1 = std::min(x0 + 1, img.width() - 1);
            double wx = fx - x0;
            for (int c = 0; c < img.channels(); ++c) {
                double top = (1.0 - wx) * img.at(y0, x0, c) + wx * img.at(y0, x1, c);
                double bot = (1.0 - wx) * img.at(y1, x0, c) + wx * img.at(y1, x1, c);
                out.at(y, x, c) = static_cast<float>((1.0 - wy) * top + wy * bot);
            }
        }
    }
    return out;
}

DisparityMap resample_disparity(const DisparityMap& map, int new_height, int new_width) {
    if (new_height <= 0 || new_width <= 0)
        throw std::invalid_argument("resample_disparity: non-positive target shape");
    DisparityMap out(new_height, new_width, map.resolution());
    const double sy = static_cast<double>(map.height()) / new_height;
    const double sx = static_cast<double>(map.width()) / new_width;
    for (int y = 0; y < new_height; ++y) {
        int ys = std::min(static_cast<int>((y + 0.5) * sy), map.height() - 1);
        for (int x = 0; x < new_width; ++x) {
            int xs = std::min(static_cast<int>((x + 0.5) * sx), map.width() - 1);
            if (map.is_valid(ys, xs)) out.set(y, x, map.value(ys, xs));
        }
    }
    return out;
}

DisparityMap scale_disparity(const DisparityMap& map, double factor) {
    if (factor <= 0.0) throw std::invalid_argument("scale_disparity: factor must be positive");
    DisparityMap out = map;
    for (int y = 0; y < map.height(); ++y)
        for (int x = 0; x < map.width(); ++x)
            if (map.is_valid(y, x))
                out.values().at(y, x) = static_cast<float>(map.value(y, x) * factor);
    return out;
}

namespace {

enum class TeleMode { device, dataset };

TeleMode infer_tele_mode(const ImagePlane& tele, const TeleWideGeometry& geom) {
    const Rect& r = geom.center_rect;
    if (tele.height() == geom.wide_height && tele.width() == geom.wide_width)
        return TeleMode::device;
    if (tele.height() == r.height && tele.width() == r.width) return TeleMode::dataset;
    throw std::invalid_argument("tele image shape matches neither tele-native nor crop mode");
}

}  // namespace

StereoPair make_wide_pair(const ImagePlane& wide, const ImagePlane& tele,
                          const TeleWideGeometry& geom) {
    if (wide.height() != geom.wide_height || wide.width() != geom.wide_width)
        throw std::invalid_argument("make_wide_pair: wide image shape mismatch");
    const Rect& r = geom.center_rect;
    TeleMode mode = infer_tele_mode(tele, geom);

    ImagePlane patch = (mode == TeleMode::dataset)
                           ? tele
                           : resample_image(tele, r.height, r.width);
    ImagePlane right(geom.wide_height, geom.wide_width, patch.channels(), 0.f);
    for (int y = 0; y < r.height; ++y)
        for (int x = 0; x < r.width; ++x)
            for (int c = 0; c < patch.channels(); ++c)
                right.at(r.row0 + y, r.col0 + x, c) = patch.at(y, x, c);
    return {wide, right};
}

StereoPair make_tele_pair(const ImagePlane& wide, const ImagePlane& tele,
                          const TeleWideGeometry& geom) {
    if (wide.height() != geom.wide_height || wide.width() != geom.wide_width)
        throw std::invalid_argument("make_tele_pair: wide image shape mismatch");
    const Rect& r = geom.center_rect;
    if (r.empty()) throw std::invalid_argument("make_tele_pair: empty center rect");
    TeleMode mode = infer_tele_mode(tele, geom);

    int th, tw;
    ImagePlane right;
    if (mode == TeleMode::device) {
        th = tele.height();
        tw = tele.width();
        right = tele;
    } else {
        th = static_cast<int>(std::lround(r.height * geom.zoom));
        tw = static_cast<int>(std::lround(r.width * geom.zoom));
        right = resample_image(tele, th, tw);
    }

    ImagePlane crop(r.height, r.width, wide.channels());
    for (int y = 0; y < r.height; ++y)
        for (int x = 0; x < r.width; ++x)
            for (int c = 0; c < wide.channels(); ++c)
                crop.at(y, x, c) = wide.at(r.row0 + y, r.col0 + x, c);
    ImagePlane left = resample_image(crop, th, tw);
    return {left, right};
}

}  // namespace twsm
