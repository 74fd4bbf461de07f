#pragma once

#include <optional>
#include <string>

#include "twsm/core.hpp"

namespace twsm {

enum class EvalMetric { outlier, epe };

struct RegionReport {
    std::optional<double> error_all;
    std::optional<double> error_cen;
    std::optional<double> error_sur;
    long long n_all = 0;
    long long n_cen = 0;
    long long n_sur = 0;
    EvalMetric metric = EvalMetric::outlier;
};

// KITTI-style outlier rate in percent: a pixel is correct iff its absolute
// error is < 3 px or its relative error is < 5%; evaluated over labeled
// pixels only (gt invalid or zero is ignored).
double outlier_rate(const DisparityMap& est, const DisparityMap& gt);

// Mean absolute disparity error over labeled pixels.
double end_point_error(const DisparityMap& est, const DisparityMap& gt);

// The chosen metric over all labeled pixels, those inside `rect`, and those
// outside it.
RegionReport region_report(const DisparityMap& est, const DisparityMap& gt, const Rect& rect,
                           EvalMetric metric);

// "metric,error_all,error_cen,error_sur,n_all,n_cen,n_sur" with empty fields
// for absent entries.
std::string report_csv(const RegionReport& report);

// Human-readable table in the error-all / error-cen / error-sur column order.
std::string report_table(const RegionReport& report, const std::string& model_name);

}  // namespace twsm
