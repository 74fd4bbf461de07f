#include "twsm/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twsm {

ProbVolume softmax_probs(const CostVolume& cv, double temperature) {
    if (temperature <= 0.0) throw std::invalid_argument("softmax_probs: temperature must be > 0");
    ProbVolume pv(cv.dmax(), cv.height(), cv.width());
    pv.valid() = cv.valid();
    std::vector<double> e(cv.dmax());
    for (int y = 0; y < cv.height(); ++y) {
        for (int x = 0; x < cv.width(); ++x) {
            double min_cost = std::numeric_limits<double>::infinity();
            for (int d = 0; d < cv.dmax(); ++d)
                min_cost = std::min<double>(min_cost, cv.at(d, y, x));
            double sum = 0.0;
            for (int d = 0; d < cv.dmax(); ++d) {
                e[d] = std::exp(-(cv.at(d, y, x) - min_cost) / temperature);
                sum += e[d];
            }
            for (int d = 0; d < cv.dmax(); ++d) pv.at(d, y, x) = e[d] / sum;
        }
    }
    return pv;
}

DisparityMap soft_argmax(const ProbVolume& pv) {
    DisparityMap out(pv.height(), pv.width());
    for (int y = 0; y < pv.height(); ++y) {
        for (int x = 0; x < pv.width(); ++x) {
            if (!pv.valid().at(y, x)) continue;
            double acc = 0.0;
            for (int d = 0; d < pv.dmax(); ++d) acc += d * pv.at(d, y, x);
            out.set(y, x, static_cast<float>(acc));
        }
    }
    return out;
}

double huber(double x, double delta) {
    const double a = std::abs(x);
    return a <= delta ? 0.5 * x * x : delta * a - 0.5 * delta * delta;
}

LossReport huber_loss(const DisparityMap& pred, const DisparityMap& gt, double delta) {
    if (pred.height() != gt.height() || pred.width() != gt.width())
        throw std::invalid_argument("huber_loss: shape mismatch");
    if (delta <= 0.0) throw std::invalid_argument("huber_loss: delta must be positive");

    LossReport report;
    report.grad = Grid<float>(pred.height(), pred.width(), 0.f);
    double acc = 0.0;
    for (int y = 0; y < pred.height(); ++y)
        for (int x = 0; x < pred.width(); ++x)
            if (pred.is_valid(y, x) && gt.is_valid(y, x)) ++report.n_labeled;
    if (report.n_labeled == 0) throw std::runtime_error("huber_loss: no labeled pixels");

    for (int y = 0; y < pred.height(); ++y) {
        for (int x = 0; x < pred.width(); ++x) {
            if (!(pred.is_valid(y, x) && gt.is_valid(y, x))) continue;
            const double err = pred.value(y, x) - gt.value(y, x);
            acc += huber(err, delta);
            report.grad.at(y, x) =
                static_cast<float>(std::clamp(err, -delta, delta) / report.n_labeled);
        }
    }
    report.value = acc / report.n_labeled;
    return report;
}

double multitask_loss(double l_smde, double l_side, double alpha) {
    if (l_smde < 0.0 || l_side < 0.0)
        throw std::invalid_argument("multitask_loss: losses must be non-negative");
    return l_smde + alpha * l_side;
}

DisparityMap disparity_to_depth(const DisparityMap& d, const CameraModel& cam,
                                double epsilon_d) {
    if (cam.focal_px <= 0.0 || cam.baseline_m <= 0.0)
        throw std::invalid_argument("disparity_to_depth: invalid camera model");
    DisparityMap z(d.height(), d.width(), d.resolution());
    for (int y = 0; y < d.height(); ++y)
        for (int x = 0; x < d.width(); ++x)
            if (d.is_valid(y, x) && d.value(y, x) > epsilon_d)
                z.set(y, x, static_cast<float>(cam.focal_px * cam.baseline_m / d.value(y, x)));
    return z;
}

DisparityMap depth_to_disparity(const DisparityMap& z, const CameraModel& cam) {
    if (cam.focal_px <= 0.0 || cam.baseline_m <= 0.0)
        throw std::invalid_argument("depth_to_disparity: invalid camera model");
    DisparityMap d(z.height(), z.width(), z.resolution());
    for (int y = 0; y < z.height(); ++y)
        for (int x = 0; x < z.width(); ++x)
            if (z.is_valid(y, x) && z.value(y, x) > 0.f)
                d.set(y, x, static_cast<float>(cam.focal_px * cam.baseline_m / z.value(y, x)));
    return d;
}

ChainResult regression_chain(const std::vector<double>& costs, double gt, double temperature,
                             double delta) {
    if (costs.empty()) throw std::invalid_argument("regression_chain: empty cost vector");
    if (temperature <= 0.0)
        throw std::invalid_argument("regression_chain: temperature must be > 0");
    const size_t dmax = costs.size();

    const double min_cost = *std::min_element(costs.begin(), costs.end());
    std::vector<double> p(dmax);
    double sum = 0.0;
    for (size_t j = 0; j < dmax; ++j) {
        p[j] = std::exp(-(costs[j] - min_cost) / temperature);
        sum += p[j];
    }
    double d = 0.0;
    for (size_t j = 0; j < dmax; ++j) {
        p[j] /= sum;
        d += static_cast<double>(j) * p[j];
    }

    const double err = d - gt;
    ChainResult result;
    result.loss = huber(err, delta);
    const double dloss_dd = std::clamp(err, -delta, delta);

    // d(d)/d(c_j) = -(p_j / tau) * (j - d)
    result.grad.resize(dmax);
    for (size_t j = 0; j < dmax; ++j)
        result.grad[j] = dloss_dd * (-(p[j] / temperature) * (static_cast<double>(j) - d));
    return result;
}

double grad_check(const std::vector<double>& costs, double gt, double temperature, double step,
                  double delta) {
    if (step < 1e-6 || step > 1e-3) throw std::invalid_argument("grad_check: step out of range");
    const ChainResult analytic = regression_chain(costs, gt, temperature, delta);
    double max_rel = 0.0;
    for (size_t j = 0; j < costs.size(); ++j) {
        std::vector<double> plus = costs, minus = costs;
        plus[j] += step;
        minus[j] -= step;
        const double numeric = (regression_chain(plus, gt, temperature, delta).loss -
                                regression_chain(minus, gt, temperature, delta).loss) /
                               (2.0 * step);
        if (std::abs(analytic.grad[j]) > 1e-8)
            max_rel = std::max(max_rel,
                               std::abs(numeric - analytic.grad[j]) / std::abs(analytic.grad[j]));
    }
    return max_rel;
}

}  // namespace twsm
