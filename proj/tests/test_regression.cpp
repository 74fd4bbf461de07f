#include <doctest.h>

#include <cmath>
#include <random>

#include "twsm/regression.hpp"

using namespace twsm;

namespace {

CostVolume single_pixel_volume(const std::vector<float>& costs) {
    CostVolume cv(static_cast<int>(costs.size()), 1, 1);
    for (size_t d = 0; d < costs.size(); ++d) cv.at(static_cast<int>(d), 0, 0) = costs[d];
    return cv;
}

}  // namespace

TEST_CASE("softmax_probs") {
    SUBCASE("equal costs give the uniform distribution") {
        ProbVolume pv = softmax_probs(single_pixel_volume({2.f, 2.f, 2.f, 2.f}), 1.0);
        for (int d = 0; d < 4; ++d) CHECK(pv.at(d, 0, 0) == doctest::Approx(0.25));
    }
    SUBCASE("lower cost gets higher probability") {
        ProbVolume pv = softmax_probs(single_pixel_volume({1.f, 3.f}), 1.0);
        CHECK(pv.at(0, 0, 0) > pv.at(1, 0, 0));
    }
    SUBCASE("small temperature approaches one-hot, matching a direct oracle") {
        const std::vector<float> costs{5.f, 1.f, 4.f, 9.f};
        const double tau = 0.1;
        ProbVolume pv = softmax_probs(single_pixel_volume(costs), tau);
        double sum = 0.0;
        for (float c : costs) sum += std::exp(-c / tau);
        for (int d = 0; d < 4; ++d)
            CHECK(pv.at(d, 0, 0) == doctest::Approx(std::exp(-costs[d] / tau) / sum));
        CHECK(pv.at(1, 0, 0) > 0.999);
    }
    SUBCASE("per-pixel probabilities sum to one") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<float> cost(0.f, 30.f);
        CostVolume cv(16, 3, 3);
        for (float& v : cv.data()) v = cost(rng);
        ProbVolume pv = softmax_probs(cv, 1.0);
        for (int y = 0; y < 3; ++y)
            for (int x = 0; x < 3; ++x) {
                double s = 0.0;
                for (int d = 0; d < 16; ++d) {
                    CHECK(pv.at(d, y, x) >= 0.f);
                    s += pv.at(d, y, x);
                }
                CHECK(s == doctest::Approx(1.0).epsilon(1e-6));
            }
    }
    SUBCASE("non-positive temperature is rejected") {
        CHECK_THROWS_AS(softmax_probs(single_pixel_volume({1.f}), 0.0), std::invalid_argument);
    }
}

TEST_CASE("soft_argmax") {
    SUBCASE("uniform over 0..6 gives 3") {
        ProbVolume pv(7, 1, 1);
        for (int d = 0; d < 7; ++d) pv.at(d, 0, 0) = 1.f / 7.f;
        CHECK(soft_argmax(pv).value(0, 0) == doctest::Approx(3.0));
    }
    SUBCASE("one-hot at 5 gives 5") {
        ProbVolume pv(8, 1, 1);
        pv.at(5, 0, 0) = 1.f;
        CHECK(soft_argmax(pv).value(0, 0) == doctest::Approx(5.0));
    }
    SUBCASE("symmetric mass at 2 and 4 gives 3") {
        ProbVolume pv(6, 1, 1);
        pv.at(2, 0, 0) = 0.5f;
        pv.at(4, 0, 0) = 0.5f;
        CHECK(soft_argmax(pv).value(0, 0) == doctest::Approx(3.0));
    }
    SUBCASE("output stays inside the bin range") {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<float> cost(0.f, 10.f);
        CostVolume cv(12, 4, 4);
        for (float& v : cv.data()) v = cost(rng);
        DisparityMap d = soft_argmax(softmax_probs(cv, 0.7));
        for (float v : d.values().data()) {
            CHECK(v >= 0.f);
            CHECK(v <= 11.f);
        }
    }
}

TEST_CASE("temperature sweep converges soft_argmax to the WTA winner") {
    const std::vector<float> costs{7.f, 2.f, 9.f, 5.f, 8.f};  // unique minimum at 1
    double prev_gap = 1e9;
    for (double tau : {4.0, 2.0, 1.0, 0.5, 0.25}) {
        DisparityMap d = soft_argmax(softmax_probs(single_pixel_volume(costs), tau));
        const double gap = std::abs(d.value(0, 0) - 1.0);
        CHECK(gap <= prev_gap + 1e-12);
        prev_gap = gap;
    }
    CHECK(prev_gap < 1e-3);
}

TEST_CASE("huber_loss") {
    auto one_pixel = [](float pred, float gt) {
        DisparityMap p(1, 1), g(1, 1);
        p.set(0, 0, pred);
        g.set(0, 0, gt);
        return huber_loss(p, g, 1.0);
    };
    SUBCASE("closed-form values") {
        CHECK(one_pixel(3.f, 3.f).value == doctest::Approx(0.0));
        CHECK(one_pixel(3.5f, 3.f).value == doctest::Approx(0.125));
        CHECK(one_pixel(5.f, 3.f).value == doctest::Approx(1.5));
    }
    SUBCASE("gradient is the clamped error over N") {
        CHECK(one_pixel(5.f, 3.f).grad.at(0, 0) == doctest::Approx(1.0));
        CHECK(one_pixel(3.25f, 3.f).grad.at(0, 0) == doctest::Approx(0.25));
    }
    SUBCASE("first derivative is continuous at the knee") {
        const double delta = 1.0, eps = 1e-9;
        const double below = (huber(delta, delta) - huber(delta - eps, delta)) / eps;
        const double above = (huber(delta + eps, delta) - huber(delta, delta)) / eps;
        CHECK(below == doctest::Approx(above).epsilon(1e-6));
    }
    SUBCASE("no labeled pixels is an error") {
        DisparityMap p(1, 1), g(1, 1);
        p.set(0, 0, 1.f);
        CHECK_THROWS_AS(huber_loss(p, g), std::runtime_error);
    }
}

TEST_CASE("multitask_loss") {
    CHECK(multitask_loss(0.4, 0.6, 1.0) == doctest::Approx(1.0));
    CHECK(multitask_loss(0.9, 123.0, 0.0) == doctest::Approx(0.9));
    CHECK(multitask_loss(0.4, 0.6, 0.5) == doctest::Approx(0.7));
}

TEST_CASE("disparity/depth conversion") {
    const CameraModel cam{700.0, 0.5};
    SUBCASE("z = FB/d") {
        DisparityMap d(1, 1);
        d.set(0, 0, 35.f);
        CHECK(disparity_to_depth(d, cam).value(0, 0) == doctest::Approx(10.0));
    }
    SUBCASE("near-zero disparity maps to invalid") {
        DisparityMap d(1, 2);
        d.set(0, 0, 0.f);
        d.set(0, 1, 1e-4f);
        DisparityMap z = disparity_to_depth(d, cam);
        CHECK_FALSE(z.is_valid(0, 0));
        CHECK_FALSE(z.is_valid(0, 1));
    }
    SUBCASE("round trip identity") {
        DisparityMap d(1, 3);
        d.set(0, 0, 35.f);
        d.set(0, 1, 1.f);
        d.set(0, 2, 250.f);
        DisparityMap back = depth_to_disparity(disparity_to_depth(d, cam), cam);
        for (int x = 0; x < 3; ++x)
            CHECK(back.value(0, x) == doctest::Approx(d.value(0, x)).epsilon(1e-9));
    }
}

TEST_CASE("gradient check on the regression chain") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> cost(0.0, 10.0);
    SUBCASE("random single-pixel instance") {
        std::vector<double> costs(8);
        for (double& c : costs) c = cost(rng);
        CHECK(grad_check(costs, 3.2, 1.0, 1e-4) < 1e-4);
    }
    SUBCASE("constant costs with gt at the expectation center") {
        std::vector<double> costs(7, 2.0);  // expectation = 3 = gt
        ChainResult r = regression_chain(costs, 3.0, 1.0);
        CHECK(r.loss == doctest::Approx(0.0));
        for (double g : r.grad) CHECK(std::abs(g) < 1e-12);
    }
    SUBCASE("temperatures down to 0.5 keep the bound") {
        for (double tau : {2.0, 1.0, 0.5}) {
            std::vector<double> costs(12);
            for (double& c : costs) c = cost(rng);
            CHECK(grad_check(costs, 5.5, tau, 1e-4) < 1e-4);
        }
    }
    SUBCASE("step outside the sanctioned range is rejected") {
        CHECK_THROWS_AS(grad_check({1.0, 2.0}, 0.5, 1.0, 1e-2), std::invalid_argument);
    }
}

TEST_CASE("a toy gradient descent fits costs to a target disparity") {
    std::vector<double> costs{3.0, 1.0, 2.0, 4.0, 5.0, 6.0};
    const double gt = 4.3, lr = 10.0;
    double loss = regression_chain(costs, gt, 1.0).loss;
    // Softmax saturation makes the tail of the descent slow; give it room.
    for (int it = 0; it < 50000; ++it) {
        ChainResult r = regression_chain(costs, gt, 1.0);
        for (size_t j = 0; j < costs.size(); ++j) costs[j] -= lr * r.grad[j];
        loss = r.loss;
    }
    CHECK(loss < 1e-3);
}
