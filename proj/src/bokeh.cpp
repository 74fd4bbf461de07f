#include "twsm/bokeh.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace twsm {

Grid<uint8_t> foreground_mask(const DisparityMap& d, const FocusPoint& fp) {
    if (!d.values().in_bounds(fp.row, fp.col) || !d.is_valid(fp.row, fp.col))
        throw std::invalid_argument("foreground_mask: focus point invalid or out of bounds");
    const float df = d.value(fp.row, fp.col);
    if (df <= 0.f) throw std::invalid_argument("foreground_mask: zero focus disparity");

    Grid<uint8_t> mask(d.height(), d.width(), uint8_t{0});
    for (int y = 0; y < d.height(); ++y)
        for (int x = 0; x < d.width(); ++x)
            if (d.is_valid(y, x)) {
                const float v = d.value(y, x);
                if (v >= 0.7f * df && v <= 1.3f * df) mask.at(y, x) = 1;
            }
    return mask;
}

ComponentLabels connected_components(const Grid<uint8_t>& mask) {
    const int h = mask.height(), w = mask.width();
    ComponentLabels out{Grid<int>(h, w, 0), 0};
    static constexpr int dy[4] = {-1, 1, 0, 0};
    static constexpr int dx[4] = {0, 0, -1, 1};
    std::deque<std::pair<int, int>> queue;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(y, x) || out.labels.at(y, x) != 0) continue;
            const int id = ++out.count;
            out.labels.at(y, x) = id;
            queue.push_back({y, x});
            while (!queue.empty()) {
                auto [cy, cx] = queue.front();
                queue.pop_front();
                for (int k = 0; k < 4; ++k) {
                    const int ny = cy + dy[k], nx = cx + dx[k];
                    if (ny < 0 || ny >= h || nx < 0 || nx >= w) continue;
                    if (mask.at(ny, nx) && out.labels.at(ny, nx) == 0) {
                        out.labels.at(ny, nx) = id;
                        queue.push_back({ny, nx});
                    }
                }
            }
        }
    }
    return out;
}

namespace {

// Felzenszwalb-Huttenlocher 1D squared distance transform (lower envelope of
// parabolas rooted at f).
void edt_1d(const std::vector<double>& f, std::vector<double>& out) {
    const int n = static_cast<int>(f.size());
    std::vector<int> v(n);
    std::vector<double> z(n + 1);
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < n; ++q) {
        double s;
        while (true) {
            const int p = v[k];
            s = ((f[q] + static_cast<double>(q) * q) - (f[p] + static_cast<double>(p) * p)) /
                (2.0 * (q - p));
            if (s > z[k]) break;
            --k;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        const double dq = q - v[k];
        out[q] = dq * dq + f[v[k]];
    }
}

}  // namespace

Grid<float> distance_to_nonforeground(const ComponentLabels& labels) {
    const int h = labels.labels.height(), w = labels.labels.width();
    bool any_background = false;
    for (int v : labels.labels.data())
        if (v == 0) {
            any_background = true;
            break;
        }
    if (!any_background)
        throw std::invalid_argument("distance_to_nonforeground: all-foreground frame");

    const double inf = 1e18;  // larger than any in-frame squared distance
    Grid<double> sq(h, w);
    std::vector<double> col(h), buf(std::max(h, w));

    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) col[y] = labels.labels.at(y, x) == 0 ? 0.0 : inf;
        edt_1d(col, buf);
        for (int y = 0; y < h; ++y) sq.at(y, x) = buf[y];
    }
    std::vector<double> row(w);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) row[x] = sq.at(y, x);
        edt_1d(row, buf);
        for (int x = 0; x < w; ++x) sq.at(y, x) = buf[x];
    }

    Grid<float> out(h, w);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            out.at(y, x) = static_cast<float>(std::sqrt(sq.at(y, x)));
    return out;
}

DisparityMap suppress_nonfocus(const DisparityMap& d, const ComponentLabels& labels,
                               int focus_component, const Grid<float>& p, bool clamp_negative) {
    if (focus_component < 1 || focus_component > labels.count)
        throw std::invalid_argument("suppress_nonfocus: bad focus component id");
    DisparityMap out = d;
    for (int y = 0; y < d.height(); ++y) {
        for (int x = 0; x < d.width(); ++x) {
            const int id = labels.labels.at(y, x);
            if (id == 0 || id == focus_component) continue;
            const float dv = d.value(y, x);
            if (dv == 0.f) continue;
            const float pv = p.at(y, x);
            float suppressed = dv * (1.f - 2.f * pv) / pv;
            if (clamp_negative) suppressed = std::max(0.f, suppressed);
            out.set(y, x, suppressed);
        }
    }
    return out;
}

DisparityMap postprocess_for_bokeh(const DisparityMap& d, const FocusPoint& fp,
                                   bool clamp_negative) {
    Grid<uint8_t> mask = foreground_mask(d, fp);
    ComponentLabels labels = connected_components(mask);
    const int focus_component = labels.labels.at(fp.row, fp.col);
    Grid<float> p = distance_to_nonforeground(labels);
    return suppress_nonfocus(d, labels, focus_component, p, clamp_negative);
}

namespace {

ImagePlane blur_uniform(const ImagePlane& img, int radius, BokehKernel kernel) {
    if (radius <= 0) return img;
    // Normalized kernel footprint.
    std::vector<std::pair<int, int>> taps;
    std::vector<double> weights;
    const double sigma = radius / 2.0;
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            if (kernel == BokehKernel::disc) {
                if (dy * dy + dx * dx > radius * radius) continue;
                taps.push_back({dy, dx});
                weights.push_back(1.0);
            } else {
                taps.push_back({dy, dx});
                weights.push_back(std::exp(-(dy * dy + dx * dx) / (2.0 * sigma * sigma)));
            }
        }
    }
    double wsum = 0.0;
    for (double wv : weights) wsum += wv;

    ImagePlane out(img.height(), img.width(), img.channels());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            for (int c = 0; c < img.channels(); ++c) {
                double acc = 0.0;
                for (size_t k = 0; k < taps.size(); ++k) {
                    const int ny = std::clamp(y + taps[k].first, 0, img.height() - 1);
                    const int nx = std::clamp(x + taps[k].second, 0, img.width() - 1);
                    acc += weights[k] * img.at(ny, nx, c);
                }
                out.at(y, x, c) = static_cast<float>(acc / wsum);
            }
        }
    }
    return out;
}

}  // namespace

ImagePlane render_bokeh(const ImagePlane& rgb, const DisparityMap& d_pp, const FocusPoint& fp,
                        const BokehParams& params) {
    if (rgb.height() != d_pp.height() || rgb.width() != d_pp.width())
        throw std::invalid_argument("render_bokeh: shape mismatch");
    if (!d_pp.all_valid()) throw std::invalid_argument("render_bokeh: disparity must be dense");
    if (params.r_max < 0.0) throw std::invalid_argument("render_bokeh: negative r_max");

    double d_range = params.d_range;
    if (d_range <= 0.0) {
        float lo = d_pp.value(0, 0), hi = lo;
        for (float v : d_pp.values().data()) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        d_range = hi - lo;
    }
    if (d_range == 0.0 || params.r_max == 0.0) return rgb;

    const float focus_disp = d_pp.value(fp.row, fp.col);
    const int n_layers = static_cast<int>(std::ceil(params.r_max));

    // Per-pixel layer index = rounded blur radius; 0 keeps the source pixel.
    Grid<int> layer(rgb.height(), rgb.width());
    for (int y = 0; y < rgb.height(); ++y) {
        for (int x = 0; x < rgb.width(); ++x) {
            const double r =
                params.r_max * std::min(1.0, std::abs(d_pp.value(y, x) - focus_disp) / d_range);
            layer.at(y, x) = std::min(n_layers, static_cast<int>(std::lround(r)));
        }
    }

    ImagePlane out = rgb;
    for (int li = 1; li <= n_layers; ++li) {
        bool used = false;
        for (int v : layer.data())
            if (v == li) {
                used = true;
                break;
            }
        if (!used) continue;
        ImagePlane blurred = blur_uniform(rgb, li, params.kernel);
        for (int y = 0; y < rgb.height(); ++y)
            for (int x = 0; x < rgb.width(); ++x)
                if (layer.at(y, x) == li)
                    for (int c = 0; c < rgb.channels(); ++c)
                        out.at(y, x, c) = blurred.at(y, x, c);
    }
    return out;
}

}  // namespace twsm
