#pragma once

#include "twsm/cost.hpp"

namespace twsm {

// Per-pixel softmax distribution over disparity bins. Bin j carries integer
// disparity value j (0..dmax-1).
class ProbVolume {
public:
    ProbVolume() = default;
    ProbVolume(int dmax, int height, int width)
        : dmax_(dmax), height_(height), width_(width),
          probs_(static_cast<size_t>(dmax) * height * width, 0.0),
          valid_(height, width, uint8_t{1}) {}

    int dmax() const { return dmax_; }
    int height() const { return height_; }
    int width() const { return width_; }

    double& at(int d, int row, int col) {
        return probs_[(static_cast<size_t>(d) * height_ + row) * width_ + col];
    }
    double at(int d, int row, int col) const {
        return probs_[(static_cast<size_t>(d) * height_ + row) * width_ + col];
    }

    Grid<uint8_t>& valid() { return valid_; }
    const Grid<uint8_t>& valid() const { return valid_; }

private:
    int dmax_ = 0;
    int height_ = 0;
    int width_ = 0;
    std::vector<double> probs_;
    Grid<uint8_t> valid_;
};

struct CameraModel {
    double focal_px = 700.0;  // F
    double baseline_m = 0.5;  // B
};

struct LossReport {
    double value = 0.0;       // mean Huber over labeled pixels
    long long n_labeled = 0;  // N
    Grid<float> grad;         // d(loss)/d(prediction), zero off the labels
};

// Softmax over negated costs with temperature, stabilized by max-subtraction.
ProbVolume softmax_probs(const CostVolume& cv, double temperature);

// Expected disparity under the per-pixel bin distribution.
DisparityMap soft_argmax(const ProbVolume& pv);

// H_delta(x) = 0.5 x^2 for |x| <= delta, else delta |x| - 0.5 delta^2.
double huber(double x, double delta);

// Mean Huber loss over the mutually labeled pixels, with its analytic
// gradient with respect to the predictions.
LossReport huber_loss(const DisparityMap& pred, const DisparityMap& gt, double delta = 1.0);

// L = L_smde + alpha * L_side.
double multitask_loss(double l_smde, double l_side, double alpha = 1.0);

// z = F*B/d; disparities at or below epsilon_d map to invalid (infinite depth).
DisparityMap disparity_to_depth(const DisparityMap& d, const CameraModel& cam,
                                double epsilon_d = 1e-3);
DisparityMap depth_to_disparity(const DisparityMap& z, const CameraModel& cam);

// Single-pixel regression chain for training-style use: costs -> softmax ->
// expectation -> Huber against a scalar label. Analytic gradient w.r.t. costs.
struct ChainResult {
    double loss = 0.0;
    std::vector<double> grad;  // d(loss)/d(cost_j)
};
ChainResult regression_chain(const std::vector<double>& costs, double gt, double temperature,
                             double delta = 1.0);

// Central finite differences of the chain loss vs the analytic gradient;
// returns the max relative error over entries with |analytic| > 1e-8.
double grad_check(const std::vector<double>& costs, double gt, double temperature, double step,
                  double delta = 1.0);

}  // namespace twsm
