#include "helidiag/mollify.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "helidiag/bump.hpp"
#include "helidiag/fft.hpp"
#include "helidiag/spectral.hpp"

namespace helidiag {

namespace {

double wrap_to_centered(double x) {
    // map [0, 2pi) to [-pi, pi)
    return x >= M_PI ? x - kTwoPi : x;
}

}  // namespace

double MollifierKernel::min_eps(const Grid& grid) { return 2.0 * grid.spacing(); }

MollifierKernel::MollifierKernel(const Grid& grid, double eps)
    : grid_(grid), eps_(eps), samples_(grid) {
    if (!(eps > 0.0 && eps < M_PI / 4.0))
        throw std::invalid_argument("MollifierKernel: eps must be in (0, pi/4)");
    if (eps < min_eps(grid)) {
        std::ostringstream msg;
        msg << "MollifierKernel: eps=" << eps << " below the resolvable minimum "
            << min_eps(grid) << " for n=" << grid.n();
        throw std::invalid_argument(msg.str());
    }

    const double c0 = mollifier_normalization(grid.dim());
    const double scale = c0 / std::pow(eps, grid.dim());
    std::vector<double> vals(grid.size(), 0.0);
    long double mass = 0.0L;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto idx = grid.unflatten(i);
        double r2 = 0.0;
        for (int a = 0; a < grid.dim(); ++a) {
            double x = wrap_to_centered(grid.coord(idx[a]));
            r2 += x * x;
        }
        double v = scale * bump(std::sqrt(r2) / eps);
        vals[i] = v;
        mass += v;
    }
    raw_mass_ = static_cast<double>(mass) * grid.cell_volume();
    // renormalize so the discrete integral is exactly 1
    const double correction = 1.0 / raw_mass_;
    for (double& v : vals) v *= correction;
    samples_ = ScalarField::from_samples(grid, std::move(vals));

    // multiplier m(xi) = sum_y w_y e^{-i xi.y}, w = samples * cellVolume
    std::vector<std::complex<double>> buf(grid.size());
    auto sv = samples_.values();
    for (std::size_t i = 0; i < grid.size(); ++i) buf[i] = {sv[i], 0.0};
    std::vector<std::complex<double>> hat;
    fft::forward(grid_, buf, hat);
    multiplier_.resize(grid.size());
    const double vol = grid.volume();  // N^d * cellVolume
    for (std::size_t i = 0; i < grid.size(); ++i) multiplier_[i] = hat[i].real() * vol;
}

ScalarField mollify(const ScalarField& f, const MollifierKernel& kernel) {
    if (f.grid() != kernel.grid())
        throw std::invalid_argument("mollify: field and kernel on different grids");
    ScalarField fs = to_spectral(f);
    auto c = fs.coeffs();
    const auto& m = kernel.multiplier();
    for (std::size_t i = 0; i < m.size(); ++i) c[i] *= m[i];
    return f.is_physical() ? to_physical(fs) : fs;
}

VectorField mollify(const VectorField& v, const MollifierKernel& kernel) {
    std::vector<ScalarField> comps;
    for (int a = 0; a < v.dim(); ++a) comps.push_back(mollify(v[a], kernel));
    return VectorField(std::move(comps));
}

ScalarField mollify(const ScalarField& f, double eps) {
    return mollify(f, MollifierKernel(f.grid(), eps));
}
VectorField mollify(const VectorField& v, double eps) {
    return mollify(v, MollifierKernel(v.grid(), eps));
}

namespace {

// Frobenius magnitude of the order-k derivative tensor, built by repeated
// spectral gradients of each tensor slot.
double derivative_tensor_norm(const ScalarField& f, int order, double p) {
    std::vector<ScalarField> slots{to_spectral(f)};
    const int d = f.grid().dim();
    for (int k = 0; k < order; ++k) {
        std::vector<ScalarField> next;
        next.reserve(slots.size() * static_cast<std::size_t>(d));
        for (const auto& s : slots)
            for (int a = 0; a < d; ++a) next.push_back(derivative(s, a));
        slots = std::move(next);
    }
    std::vector<double> mag(f.grid().size(), 0.0);
    for (const auto& s : slots) {
        auto v = to_physical(s).values();
        for (std::size_t i = 0; i < mag.size(); ++i) mag[i] += v[i] * v[i];
    }
    std::vector<double> root(mag.size());
    for (std::size_t i = 0; i < mag.size(); ++i) root[i] = std::sqrt(mag[i]);
    return lp_norm(ScalarField::from_samples(f.grid(), std::move(root)), p);
}

}  // namespace

ScaleScan mollifier_rate_scan(const ScalarField& f, double p, const std::vector<double>& scales,
                              RateMode mode, int derivative_order) {
    if (scales.empty()) throw std::invalid_argument("mollifier_rate_scan: empty scales");
    if (mode == RateMode::derivative && derivative_order < 1)
        throw std::invalid_argument("mollifier_rate_scan: derivative order must be >= 1");
    const ScalarField fs = to_spectral(f);
    auto value = [&](double eps) {
        MollifierKernel kernel(f.grid(), eps);
        ScalarField smoothed = mollify(fs, kernel);
        if (mode == RateMode::approximation) {
            smoothed -= fs;
            return lp_norm(smoothed, p);
        }
        return derivative_tensor_norm(smoothed, derivative_order, p);
    };
    return run_scan(scales, value, 0.0);
}

double kernel_derivative_l1(const Grid& grid, double eps, int order) {
    if (order < 1 || order > 2)
        throw std::invalid_argument("kernel_derivative_l1: order must be 1 or 2");
    const int d = grid.dim();
    const double c0 = mollifier_normalization(d);
    // |grad eta_eps|(x) = eps^{-d-1} c0 |eta'(|x|/eps)|; order 2 uses the
    // radial second-derivative magnitude as a proxy for the Hessian norm.
    long double sum = 0.0L;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto idx = grid.unflatten(i);
        double r2 = 0.0;
        for (int a = 0; a < d; ++a) {
            double x = wrap_to_centered(grid.coord(idx[a]));
            r2 += x * x;
        }
        const double r = std::sqrt(r2) / eps;
        double val;
        if (order == 1) {
            val = std::abs(bump_derivative(r));
        } else {
            const double dr = 1e-5;
            val = std::abs((bump_derivative(r + dr) - bump_derivative(r - dr)) / (2 * dr));
        }
        sum += val;
    }
    return static_cast<double>(sum) * grid.cell_volume() * c0 /
           std::pow(eps, static_cast<double>(d + order));
}

}  // namespace helidiag
