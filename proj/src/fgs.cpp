#include "twsm/fgs.hpp"

#include <cassert>
#include <cmath>

namespace twsm {

std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs) {
    const size_t n = diag.size();
    if (lower.size() != n || upper.size() != n || rhs.size() != n || n == 0)
        throw std::invalid_argument("solve_tridiagonal: inconsistent sizes");

    std::vector<double> c(n), d(n), x(n);
    assert(diag[0] != 0.0);
    c[0] = upper[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for (size_t i = 1; i < n; ++i) {
        const double denom = diag[i] - lower[i] * c[i - 1];
        assert(denom != 0.0);
        c[i] = upper[i] / denom;
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / denom;
    }
    x[n - 1] = d[n - 1];
    for (size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

std::vector<double> wls_scanline(std::span<const double> f, std::span<const double> weights,
                                 double lambda, const double* fixed_before, double weight_before,
                                 const double* fixed_after, double weight_after) {
    const size_t n = f.size();
    if (n == 0) return {};
    if (weights.size() + 1 != n) throw std::invalid_argument("wls_scanline: bad weight count");

    // Solve for the residual u - f: the right-hand side is exactly zero for a
    // constant scanline, so the fixed point is bit-exact.
    std::vector<double> lower(n, 0.0), diag(n, 1.0), upper(n, 0.0), rhs(n, 0.0);
    for (size_t i = 0; i + 1 < n; ++i) {
        const double lw = lambda * weights[i];
        diag[i] += lw;
        diag[i + 1] += lw;
        upper[i] = -lw;
        lower[i + 1] = -lw;
        rhs[i] += lw * (f[i + 1] - f[i]);
        rhs[i + 1] += lw * (f[i] - f[i + 1]);
    }
    if (fixed_before) {
        const double lw = lambda * weight_before;
        diag[0] += lw;
        rhs[0] += lw * (*fixed_before - f[0]);
    }
    if (fixed_after) {
        const double lw = lambda * weight_after;
        diag[n - 1] += lw;
        rhs[n - 1] += lw * (*fixed_after - f[n - 1]);
    }

    std::vector<double> v = solve_tridiagonal(lower, diag, upper, rhs);
    for (size_t i = 0; i < n; ++i) v[i] += f[i];
    return v;
}

double fgs_lambda_t(double lambda, int iteration, int total_iterations) {
    const double num = std::pow(4.0, total_iterations - iteration);
    const double den = std::pow(4.0, total_iterations) - 1.0;
    return 1.5 * lambda * num / den;
}

namespace {

double guidance_weight(const ImagePlane& g, int y0, int x0, int y1, int x1, double sigma) {
    double diff = 0.0;
    for (int c = 0; c < g.channels(); ++c) diff += std::abs(g.at(y0, x0, c) - g.at(y1, x1, c));
    diff /= g.channels();
    return std::exp(-diff / sigma);
}

// One pass along a scanline of length `len`, restricted to mask-true runs.
// `get`/`set` address the scanline; `weight(i)` couples positions i and i+1.
template <typename Get, typename Set, typename Weight, typename Mask>
void pass_scanline(int len, double lambda, Get get, Set set, Weight weight, Mask mask) {
    int i = 0;
    while (i < len) {
        if (!mask(i)) {
            ++i;
            continue;
        }
        int j = i;
        while (j < len && mask(j)) ++j;  // run [i, j)
        const int n = j - i;
        std::vector<double> f(n), w(n > 0 ? n - 1 : 0);
        for (int k = 0; k < n; ++k) f[k] = get(i + k);
        for (int k = 0; k + 1 < n; ++k) w[k] = weight(i + k);

        double before = 0.0, after = 0.0, wb = 0.0, wa = 0.0;
        const double* pb = nullptr;
        const double* pa = nullptr;
        if (i > 0) {
            before = get(i - 1);
            wb = weight(i - 1);
            pb = &before;
        }
        if (j < len) {
            after = get(j);
            wa = weight(j - 1);
            pa = &after;
        }
        std::vector<double> u = wls_scanline(f, w, lambda, pb, wb, pa, wa);
        for (int k = 0; k < n; ++k) set(i + k, u[k]);
        i = j;
    }
}

}  // namespace

Grid<float> fgs_smooth_masked(const Grid<float>& signal, const ImagePlane& guidance,
                              const FgsParams& params, const Grid<uint8_t>& update_mask) {
    params.validate();
    if (signal.height() != guidance.height() || signal.width() != guidance.width() ||
        update_mask.height() != signal.height() || update_mask.width() != signal.width())
        throw std::invalid_argument("fgs_smooth: shape mismatch");

    const int h = signal.height(), w = signal.width();
    Grid<double> work(h, w);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) work.at(y, x) = signal.at(y, x);

    for (int t = 1; t <= params.iterations; ++t) {
        const double lt = fgs_lambda_t(params.lambda, t, params.iterations);
        for (int y = 0; y < h; ++y) {
            pass_scanline(
                w, lt, [&](int x) { return work.at(y, x); },
                [&](int x, double v) { work.at(y, x) = v; },
                [&](int x) { return guidance_weight(guidance, y, x, y, x + 1, params.sigma); },
                [&](int x) { return update_mask.at(y, x) != 0; });
        }
        for (int x = 0; x < w; ++x) {
            pass_scanline(
                h, lt, [&](int y) { return work.at(y, x); },
                [&](int y, double v) { work.at(y, x) = v; },
                [&](int y) { return guidance_weight(guidance, y, x, y + 1, x, params.sigma); },
                [&](int y) { return update_mask.at(y, x) != 0; });
        }
    }

    Grid<float> out(h, w);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            out.at(y, x) = update_mask.at(y, x) ? static_cast<float>(work.at(y, x))
                                                : signal.at(y, x);
    return out;
}

Grid<float> fgs_smooth(const Grid<float>& signal, const ImagePlane& guidance,
                       const FgsParams& params) {
    Grid<uint8_t> all(signal.height(), signal.width(), uint8_t{1});
    return fgs_smooth_masked(signal, guidance, params, all);
}

}  // namespace twsm
