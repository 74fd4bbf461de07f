#include "twsm/metrics.hpp"

#include <cmath>
#include <sstream>

namespace twsm {

namespace {

bool labeled(const DisparityMap& est, const DisparityMap& gt, int y, int x) {
    // gt == 0 cannot feed the relative-error test; treated as unlabeled.
    return est.is_valid(y, x) && gt.is_valid(y, x) && gt.value(y, x) != 0.f;
}

bool is_outlier(float est, float gt) {
    const float err = std::abs(est - gt);
    const bool correct = err < 3.f || err / std::abs(gt) < 0.05f;
    return !correct;
}

struct Tally {
    long long n = 0;
    double acc = 0.0;  // outlier count or absolute-error sum

    std::optional<double> result(EvalMetric metric) const {
        if (n == 0) return std::nullopt;
        return metric == EvalMetric::outlier ? 100.0 * acc / n : acc / n;
    }
};

void check_shapes(const DisparityMap& est, const DisparityMap& gt) {
    if (est.height() != gt.height() || est.width() != gt.width())
        throw std::invalid_argument("metrics: shape mismatch");
}

}  // namespace

double outlier_rate(const DisparityMap& est, const DisparityMap& gt) {
    RegionReport r =
        region_report(est, gt, Rect{0, 0, gt.height(), gt.width()}, EvalMetric::outlier);
    if (!r.error_all) throw std::runtime_error("outlier_rate: zero labeled pixels");
    return *r.error_all;
}

double end_point_error(const DisparityMap& est, const DisparityMap& gt) {
    RegionReport r = region_report(est, gt, Rect{0, 0, gt.height(), gt.width()}, EvalMetric::epe);
    if (!r.error_all) throw std::runtime_error("end_point_error: zero labeled pixels");
    return *r.error_all;
}

RegionReport region_report(const DisparityMap& est, const DisparityMap& gt, const Rect& rect,
                           EvalMetric metric) {
    check_shapes(est, gt);
    Tally all, cen, sur;
    for (int y = 0; y < gt.height(); ++y) {
        for (int x = 0; x < gt.width(); ++x) {
            if (!labeled(est, gt, y, x)) continue;
            const double contrib = metric == EvalMetric::outlier
                                       ? (is_outlier(est.value(y, x), gt.value(y, x)) ? 1.0 : 0.0)
                                       : std::abs(est.value(y, x) - gt.value(y, x));
            all.n++;
            all.acc += contrib;
            Tally& region = rect.contains(y, x) ? cen : sur;
            region.n++;
            region.acc += contrib;
        }
    }
    RegionReport report;
    report.metric = metric;
    report.error_all = all.result(metric);
    report.error_cen = cen.result(metric);
    report.error_sur = sur.result(metric);
    report.n_all = all.n;
    report.n_cen = cen.n;
    report.n_sur = sur.n;
    return report;
}

namespace {

std::string fmt(const std::optional<double>& v) {
    if (!v) return "";
    std::ostringstream os;
    os << *v;
    return os.str();
}

}  // namespace

std::string report_csv(const RegionReport& report) {
    std::ostringstream os;
    os << (report.metric == EvalMetric::outlier ? "outlier" : "epe") << ',' << fmt(report.error_all)
       << ',' << fmt(report.error_cen) << ',' << fmt(report.error_sur) << ',' << report.n_all
       << ',' << report.n_cen << ',' << report.n_sur;
    return os.str();
}

std::string report_table(const RegionReport& report, const std::string& model_name) {
    const bool pct = report.metric == EvalMetric::outlier;
    const char* unit = pct ? "(%)" : "(pixels)";
    auto cell = [&](const std::optional<double>& v) { return v ? fmt(v) : std::string("N/A"); };
    std::ostringstream os;
    os << "Model name | error-all" << unit << " | error-cen" << unit << " | error-sur" << unit
       << '\n'
       << model_name << " | " << cell(report.error_all) << " | " << cell(report.error_cen)
       << " | " << cell(report.error_sur) << '\n';
    return os.str();
}

}  // namespace twsm
