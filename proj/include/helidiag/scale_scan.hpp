// Scale scans: a geometric grid of scales, measured values, and the fitted
// log-log slope used for scaling-exponent estimation.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace helidiag {

/// Trend of a compensated quantity as the scale goes to zero.
enum class Trend { flat, decaying, growing, insufficient };

std::string to_string(Trend t);

struct PowerLawFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int window_lo = 0;   // inclusive indices of the points used
    int window_hi = -1;  // inclusive
    bool valid = false;
};

struct ScaleScan {
    std::vector<double> scales;  // strictly decreasing
    std::vector<double> values;  // >= 0 measurements per scale
    double compensation_exponent = 0.0;
    PowerLawFit fit;
    Trend trend = Trend::insufficient;

    double compensated(std::size_t i) const;
    std::string to_csv() const;
    std::string to_json(const std::string& quantity = "") const;
};

/// Geometric scale grid, descending from eps0 by ratio (0 < ratio < 1).
std::vector<double> geometric_scales(double eps0, double ratio, int count);

/// Least squares on (log scale, log value). The fit window drops the largest
/// and smallest 20% of scales; zero values inside the window are skipped.
PowerLawFit fit_power_law(const std::vector<double>& scales, const std::vector<double>& values);

/// Same, fitting all points (no window trim).
PowerLawFit fit_power_law_full(const std::vector<double>& scales,
                               const std::vector<double>& values);

/// Trend of value/scale^exponent as scale -> 0, dead band +-0.05 on the fitted
/// slope (slope > band: decaying, slope < -band: growing).
Trend classify_scale_trend(const std::vector<double>& scales, const std::vector<double>& values,
                           double exponent);

/// Trend over dyadic shell index j of a compensated sequence (larger j =
/// smaller scale): slope of log2(value) vs j over the top half of shells,
/// dead band +-0.05; negative slope means decaying.
Trend classify_shell_trend(const std::vector<int>& shells, const std::vector<double>& compensated);

/// Assemble a scan: measure `value(scale)` per scale, fit, classify.
ScaleScan run_scan(const std::vector<double>& scales,
                   const std::function<double(double)>& value, double compensation_exponent,
                   int workers = 1);

}  // namespace helidiag
