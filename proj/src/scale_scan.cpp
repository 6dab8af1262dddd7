#include "helidiag/scale_scan.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace helidiag {

namespace {
constexpr double kDeadBand = 0.05;

PowerLawFit least_squares_loglog(const std::vector<double>& x, const std::vector<double>& y,
                                 int lo, int hi) {
    PowerLawFit fit;
    fit.window_lo = lo;
    fit.window_hi = hi;
    std::vector<double> lx, ly;
    for (int i = lo; i <= hi; ++i) {
        if (y[static_cast<std::size_t>(i)] > 0.0 && x[static_cast<std::size_t>(i)] > 0.0) {
            lx.push_back(std::log(x[static_cast<std::size_t>(i)]));
            ly.push_back(std::log(y[static_cast<std::size_t>(i)]));
        }
    }
    if (lx.size() < 2) return fit;  // not enough usable points; fit stays invalid
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
        syy += ly[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    const double ss_tot = syy - sy * sy / n;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        double r = ly[i] - (fit.slope * lx[i] + fit.intercept);
        ss_res += r * r;
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.valid = true;
    return fit;
}
}  // namespace

std::string to_string(Trend t) {
    switch (t) {
        case Trend::flat: return "flat";
        case Trend::decaying: return "decaying";
        case Trend::growing: return "growing";
        case Trend::insufficient: return "insufficient shells";
    }
    return "?";
}

double ScaleScan::compensated(std::size_t i) const {
    return values[i] / std::pow(scales[i], compensation_exponent);
}

std::vector<double> geometric_scales(double eps0, double ratio, int count) {
    if (count < 1) throw std::invalid_argument("geometric_scales: count must be >= 1");
    if (!(ratio > 0.0 && ratio < 1.0))
        throw std::invalid_argument("geometric_scales: ratio must be in (0,1)");
    std::vector<double> s(static_cast<std::size_t>(count));
    s[0] = eps0;
    for (int i = 1; i < count; ++i) s[static_cast<std::size_t>(i)] = s[i - 1] * ratio;
    return s;
}

PowerLawFit fit_power_law(const std::vector<double>& scales, const std::vector<double>& values) {
    if (scales.size() != values.size())
        throw std::invalid_argument("fit_power_law: size mismatch");
    const int n = static_cast<int>(scales.size());
    if (n < 2) return PowerLawFit{};
    // scales are stored descending: trim 20% at each end (largest first)
    const int drop = static_cast<int>(0.2 * n);
    int lo = drop, hi = n - 1 - drop;
    if (hi - lo + 1 < 2) { lo = 0; hi = n - 1; }
    return least_squares_loglog(scales, values, lo, hi);
}

PowerLawFit fit_power_law_full(const std::vector<double>& scales,
                               const std::vector<double>& values) {
    if (scales.size() != values.size())
        throw std::invalid_argument("fit_power_law_full: size mismatch");
    if (scales.empty()) return PowerLawFit{};
    return least_squares_loglog(scales, values, 0, static_cast<int>(scales.size()) - 1);
}

Trend classify_scale_trend(const std::vector<double>& scales, const std::vector<double>& values,
                           double exponent) {
    std::vector<double> comp(values.size());
    int nonzero = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        comp[i] = values[i] / std::pow(scales[i], exponent);
        if (comp[i] > 0.0) ++nonzero;
    }
    if (nonzero < 3) return Trend::insufficient;
    PowerLawFit fit = fit_power_law(scales, comp);
    if (!fit.valid) return Trend::insufficient;
    if (fit.slope > kDeadBand) return Trend::decaying;  // compensated -> 0 with the scale
    if (fit.slope < -kDeadBand) return Trend::growing;
    return Trend::flat;
}

Trend classify_shell_trend(const std::vector<int>& shells,
                           const std::vector<double>& compensated) {
    if (shells.size() != compensated.size())
        throw std::invalid_argument("classify_shell_trend: size mismatch");
    std::vector<std::pair<int, double>> nonzero;
    for (std::size_t i = 0; i < shells.size(); ++i)
        if (compensated[i] > 0.0) nonzero.emplace_back(shells[i], compensated[i]);
    if (nonzero.size() < 3) return Trend::insufficient;
    // top half of the populated shells
    std::size_t start = nonzero.size() / 2;
    if (nonzero.size() - start < 3) start = nonzero.size() - 3;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double n = 0;
    for (std::size_t i = start; i < nonzero.size(); ++i) {
        double x = nonzero[i].first;
        double y = std::log2(nonzero[i].second);
        sx += x; sy += y; sxx += x * x; sxy += x * y; n += 1;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return Trend::insufficient;
    const double slope = (n * sxy - sx * sy) / denom;
    if (slope < -kDeadBand) return Trend::decaying;  // compensated falls with j
    if (slope > kDeadBand) return Trend::growing;
    return Trend::flat;
}

ScaleScan run_scan(const std::vector<double>& scales,
                   const std::function<double(double)>& value, double compensation_exponent,
                   int workers) {
    if (scales.empty()) throw std::invalid_argument("run_scan: empty scale list");
    for (std::size_t i = 1; i < scales.size(); ++i)
        if (scales[i] >= scales[i - 1])
            throw std::invalid_argument("run_scan: scales must be strictly decreasing");
    ScaleScan scan;
    scan.scales = scales;
    scan.values.resize(scales.size());
    scan.compensation_exponent = compensation_exponent;
    if (workers <= 1) {
        for (std::size_t i = 0; i < scales.size(); ++i) scan.values[i] = value(scales[i]);
    } else {
        // scan points are independent; results land by index so the output is
        // identical to the sequential order
        std::vector<std::future<double>> futures(scales.size());
        std::size_t next = 0;
        while (next < scales.size()) {
            std::size_t batch = std::min<std::size_t>(workers, scales.size() - next);
            for (std::size_t b = 0; b < batch; ++b)
                futures[next + b] =
                    std::async(std::launch::async, value, scales[next + b]);
            for (std::size_t b = 0; b < batch; ++b)
                scan.values[next + b] = futures[next + b].get();
            next += batch;
        }
    }
    scan.fit = fit_power_law(scan.scales, scan.values);
    scan.trend = classify_scale_trend(scan.scales, scan.values, compensation_exponent);
    return scan;
}

std::string ScaleScan::to_csv() const {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "scale,value,compensated,log10_scale,log10_value\n";
    for (std::size_t i = 0; i < scales.size(); ++i) {
        out << scales[i] << ',' << values[i] << ',' << compensated(i) << ','
            << std::log10(scales[i]) << ','
            << (values[i] > 0 ? std::log10(values[i]) : std::nan("")) << '\n';
    }
    return out.str();
}

std::string ScaleScan::to_json(const std::string& quantity) const {
    nlohmann::json j;
    j["schema_version"] = 1;
    if (!quantity.empty()) j["quantity"] = quantity;
    j["compensation_exponent"] = compensation_exponent;
    auto& pts = j["points"] = nlohmann::json::array();
    for (std::size_t i = 0; i < scales.size(); ++i)
        pts.push_back({{"scale", scales[i]}, {"value", values[i]}, {"compensated", compensated(i)}});
    j["fit"] = {{"slope", fit.slope},
                {"intercept", fit.intercept},
                {"r2", fit.r_squared},
                {"window", {fit.window_lo, fit.window_hi}},
                {"valid", fit.valid}};
    j["verdict"] = to_string(trend);
    return j.dump(2);
}

}  // namespace helidiag
