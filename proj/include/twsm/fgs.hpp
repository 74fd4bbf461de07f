#pragma once

#include <span>

#include "twsm/core.hpp"

namespace twsm {

struct FgsParams {
    double lambda = 900.0;  // smoothness weight
    double sigma = 0.07;    // guidance bandwidth on [0,1] intensities
    int iterations = 3;     // T

    void validate() const {
        if (lambda < 0.0 || sigma <= 0.0 || iterations < 1)
            throw std::invalid_argument("FgsParams: lambda >= 0, sigma > 0, T >= 1 required");
    }
};

// Thomas algorithm for a diagonally dominant tridiagonal system.
// lower[i] multiplies x[i-1] in row i (lower[0] unused); upper[i] multiplies
// x[i+1] (upper[n-1] unused).
std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs);

// Exact minimizer of the 1D weighted-least-squares scanline energy
//   sum (u_p - f_p)^2 + lambda * sum w_p (u_p - u_{p+1})^2
// where weights[p] couples p and p+1 (size n-1). Optional Dirichlet values
// couple the run to fixed neighbors outside it.
std::vector<double> wls_scanline(std::span<const double> f, std::span<const double> weights,
                                 double lambda, const double* fixed_before = nullptr,
                                 double weight_before = 0.0, const double* fixed_after = nullptr,
                                 double weight_after = 0.0);

// Edge-guided global smoothing: T iterations of a horizontal then a vertical
// scanline solve with per-iteration weight lambda_t = 1.5 lambda 4^(T-t)/(4^T-1)
// and guidance weights w = exp(-|g_p - g_q|_1 / sigma) (channel-mean abs diff).
Grid<float> fgs_smooth(const Grid<float>& signal, const ImagePlane& guidance,
                       const FgsParams& params);

// Same solve restricted to mask-true pixels: scanline runs of updatable pixels
// are solved with the adjacent fixed pixels acting as Dirichlet data; pixels
// outside the mask are returned unchanged.
Grid<float> fgs_smooth_masked(const Grid<float>& signal, const ImagePlane& guidance,
                              const FgsParams& params, const Grid<uint8_t>& update_mask);

// The per-iteration smoothness weight schedule.
double fgs_lambda_t(double lambda, int iteration, int total_iterations);

}  // namespace twsm
