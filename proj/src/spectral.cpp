#include "helidiag/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "helidiag/fft.hpp"

namespace helidiag {

namespace {

// Long-double accumulation keeps quadrature reductions deterministic and
// well below the 1e-12 tolerances used throughout.
double accumulate(const std::vector<long double>& partial) {
    long double s = 0.0L;
    for (long double v : partial) s += v;
    return static_cast<double>(s);
}

std::vector<std::complex<double>> complexify(std::span<const double> v) {
    std::vector<std::complex<double>> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = {v[i], 0.0};
    return out;
}

}  // namespace

ScalarField transform(const ScalarField& f, Representation target) {
    if (f.rep() == target) return f;
    const Grid& g = f.grid();
    if (target == Representation::spectral) {
        auto buf = complexify(f.values());
        std::vector<std::complex<double>> out;
        fft::forward(g, buf, out);
        return ScalarField::from_spectrum(g, std::move(out));
    }
    std::vector<std::complex<double>> out;
    fft::inverse(g, std::vector<std::complex<double>>(f.coeffs().begin(), f.coeffs().end()),
                 out);
    std::vector<double> vals(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) vals[i] = out[i].real();
    return ScalarField::from_samples(g, std::move(vals));
}

VectorField transform(const VectorField& v, Representation target) {
    std::vector<ScalarField> comps;
    comps.reserve(v.dim());
    for (int a = 0; a < v.dim(); ++a) comps.push_back(transform(v[a], target));
    return VectorField(std::move(comps));
}

ScalarField to_physical(const ScalarField& f) { return transform(f, Representation::physical); }
ScalarField to_spectral(const ScalarField& f) { return transform(f, Representation::spectral); }
VectorField to_physical(const VectorField& v) { return transform(v, Representation::physical); }
VectorField to_spectral(const VectorField& v) { return transform(v, Representation::spectral); }

double max_imag_residual(const ScalarField& f) {
    const ScalarField fs = to_spectral(f);
    const Grid& g = fs.grid();
    std::vector<std::complex<double>> out;
    fft::inverse(g, std::vector<std::complex<double>>(fs.coeffs().begin(), fs.coeffs().end()),
                 out);
    double m = 0.0;
    for (const auto& z : out) m = std::max(m, std::abs(z.imag()));
    return m;
}

ScalarField apply_multiplier(const ScalarField& f,
                             const std::function<double(const std::array<int, 3>&)>& m) {
    ScalarField fs = to_spectral(f);
    const Grid& g = fs.grid();
    auto c = fs.coeffs();
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto idx = g.unflatten(i);
        std::array<int, 3> xi{0, 0, 0};
        for (int a = 0; a < g.dim(); ++a) xi[a] = g.wavenumber(idx[a]);
        c[i] *= m(xi);
    }
    return fs;
}

ScalarField derivative(const ScalarField& f, int axis) {
    const Grid& g = f.grid();
    if (axis < 0 || axis >= g.dim())
        throw std::invalid_argument("derivative: axis out of range for dim " +
                                    std::to_string(g.dim()));
    ScalarField fs = to_spectral(f);
    auto c = fs.coeffs();
    const int nyq = g.nyquist();
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto idx = g.unflatten(i);
        int k = g.wavenumber(idx[axis]);
        if (idx[axis] == nyq) {
            c[i] = 0.0;  // Nyquist derivative is ambiguous; zero it
        } else {
            c[i] *= std::complex<double>(0.0, static_cast<double>(k));
        }
    }
    return fs;
}

VectorField gradient(const ScalarField& f) {
    ScalarField fs = to_spectral(f);
    std::vector<ScalarField> comps;
    for (int a = 0; a < f.grid().dim(); ++a) comps.push_back(derivative(fs, a));
    return VectorField(std::move(comps));
}

VectorField curl(const VectorField& v) {
    if (v.dim() != 3) throw std::invalid_argument("curl: expected a 3D vector field");
    VectorField vs = to_spectral(v);
    std::vector<ScalarField> comps;
    comps.push_back(derivative(vs[2], 1) - derivative(vs[1], 2));
    comps.push_back(derivative(vs[0], 2) - derivative(vs[2], 0));
    comps.push_back(derivative(vs[1], 0) - derivative(vs[0], 1));
    return VectorField(std::move(comps));
}

ScalarField curl2d(const VectorField& v) {
    if (v.dim() != 2) throw std::invalid_argument("curl2d: expected a 2D vector field");
    VectorField vs = to_spectral(v);
    return derivative(vs[1], 0) - derivative(vs[0], 1);
}

ScalarField divergence(const VectorField& v) {
    VectorField vs = to_spectral(v);
    ScalarField out = derivative(vs[0], 0);
    for (int a = 1; a < v.dim(); ++a) out += derivative(vs[a], a);
    return out;
}

VectorField leray_project(const VectorField& v) {
    VectorField vs = to_spectral(v);
    const Grid& g = vs.grid();
    const int d = g.dim();
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto idx = g.unflatten(i);
        double xi[3] = {0, 0, 0};
        double k2 = 0.0;
        for (int a = 0; a < d; ++a) {
            xi[a] = static_cast<double>(g.wavenumber(idx[a]));
            k2 += xi[a] * xi[a];
        }
        if (k2 == 0.0) continue;  // mean mode preserved
        std::complex<double> dot = 0.0;
        for (int a = 0; a < d; ++a) dot += xi[a] * vs[a].coeffs()[i];
        dot /= k2;
        for (int a = 0; a < d; ++a) vs[a].coeffs()[i] -= xi[a] * dot;
    }
    return vs;
}

double lp_norm(const ScalarField& f, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    const ScalarField fp = to_physical(f);
    auto v = fp.values();
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    const double cell = f.grid().cell_volume();
    long double s = 0.0L;
    for (double x : v) s += std::pow(std::abs(x), p);
    return std::pow(static_cast<double>(s) * cell, 1.0 / p);
}

double lp_norm(const VectorField& v, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    const VectorField vp = to_physical(v);
    const std::size_t size = vp.grid().size();
    std::vector<double> mag(size, 0.0);
    for (int a = 0; a < vp.dim(); ++a) {
        auto vals = vp[a].values();
        for (std::size_t i = 0; i < size; ++i) mag[i] += vals[i] * vals[i];
    }
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : mag) m = std::max(m, x);
        return std::sqrt(m);
    }
    const double cell = v.grid().cell_volume();
    long double s = 0.0L;
    for (double x : mag) s += std::pow(x, p / 2.0);
    return std::pow(static_cast<double>(s) * cell, 1.0 / p);
}

double linf_norm_oversampled(const ScalarField& f, int factor) {
    return lp_norm(resample(f, f.grid().n() * factor),
                   std::numeric_limits<double>::infinity());
}

double lp_time_norm(const std::vector<double>& times, const std::vector<double>& values,
                    double p) {
    if (times.size() != values.size() || times.empty())
        throw std::invalid_argument("lp_time_norm: times/values size mismatch");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    if (times.size() == 1) return std::abs(values[0]);
    long double s = 0.0L;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        double dt = times[i + 1] - times[i];
        s += 0.5 * dt * (std::pow(std::abs(values[i]), p) + std::pow(std::abs(values[i + 1]), p));
    }
    return std::pow(static_cast<double>(s), 1.0 / p);
}

ScalarField shift(const ScalarField& f, const std::vector<double>& y) {
    const Grid& g = f.grid();
    if (static_cast<int>(y.size()) != g.dim())
        throw std::invalid_argument("shift: offset dimension mismatch");
    ScalarField fs = to_spectral(f);
    auto c = fs.coeffs();
    const int nyq = g.nyquist();
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto idx = g.unflatten(i);
        double phase = 0.0;
        bool nyquist = false;
        for (int a = 0; a < g.dim(); ++a) {
            if (idx[a] == nyq) nyquist = true;
            phase -= static_cast<double>(g.wavenumber(idx[a])) * y[a];
        }
        if (nyquist) {
            // keep the field real: a Nyquist cosine shifts by its real phase part
            c[i] *= std::cos(phase);
        } else {
            c[i] *= std::complex<double>(std::cos(phase), std::sin(phase));
        }
    }
    return fs;
}

ScalarField multiply_nodal(const ScalarField& a, const ScalarField& b) {
    if (a.grid() != b.grid())
        throw std::invalid_argument("multiply_nodal: fields on different grids");
    const ScalarField ap = to_physical(a);
    const ScalarField bp = to_physical(b);
    std::vector<double> out(ap.grid().size());
    auto av = ap.values();
    auto bv = bp.values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] * bv[i];
    return ScalarField::from_samples(a.grid(), std::move(out));
}

namespace {

// Copy spectral modes |xi_a| < n_small/2 between grids of size n_small and
// n_big (n_big > n_small); Nyquist modes are dropped.
void copy_low_modes(const Grid& from, std::span<const std::complex<double>> src,
                    const Grid& to, std::span<std::complex<double>> dst) {
    const Grid& small = from.n() < to.n() ? from : to;
    const int half = small.n() / 2;
    for (std::size_t i = 0; i < small.size(); ++i) {
        auto idx = small.unflatten(i);
        std::array<int, 3> kidx{0, 0, 0};
        bool keep = true;
        for (int a = 0; a < small.dim(); ++a) {
            int k = small.wavenumber(idx[a]);
            if (std::abs(k) >= half) { keep = false; break; }
            kidx[a] = k;
        }
        if (!keep) continue;
        std::array<int, 3> fi{0, 0, 0}, ti{0, 0, 0};
        for (int a = 0; a < small.dim(); ++a) {
            fi[a] = kidx[a] >= 0 ? kidx[a] : kidx[a] + from.n();
            ti[a] = kidx[a] >= 0 ? kidx[a] : kidx[a] + to.n();
        }
        dst[to.flatten(ti)] = src[from.flatten(fi)];
    }
}

}  // namespace

ScalarField multiply_dealiased(const ScalarField& a, const ScalarField& b) {
    if (a.grid() != b.grid())
        throw std::invalid_argument("multiply_dealiased: fields on different grids");
    const Grid& g = a.grid();
    const Grid fine(g.dim(), g.n() * 2);  // power-of-two pad; >= 3/2 rule

    auto pad = [&](const ScalarField& f) {
        ScalarField fs = to_spectral(f);
        std::vector<std::complex<double>> big(fine.size(), {0.0, 0.0});
        copy_low_modes(g, fs.coeffs(), fine, big);
        return ScalarField::from_spectrum(fine, std::move(big));
    };

    ScalarField prod_fine = to_spectral(multiply_nodal(pad(a), pad(b)));
    std::vector<std::complex<double>> out(g.size(), {0.0, 0.0});
    copy_low_modes(fine, prod_fine.coeffs(), g, out);
    return ScalarField::from_spectrum(g, std::move(out));
}

ScalarField resample(const ScalarField& f, int new_n) {
    const Grid& g = f.grid();
    if (new_n == g.n()) return f;
    const Grid target(g.dim(), new_n);
    ScalarField fs = to_spectral(f);
    std::vector<std::complex<double>> out(target.size(), {0.0, 0.0});
    copy_low_modes(g, fs.coeffs(), target, out);
    return ScalarField::from_spectrum(target, std::move(out));
}

ScalarField riesz(const ScalarField& f, int axis) {
    const Grid& g = f.grid();
    if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("riesz: axis out of range");
    ScalarField fs = to_spectral(f);
    auto c = fs.coeffs();
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto idx = g.unflatten(i);
        double xi[3] = {0, 0, 0};
        double k2 = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            xi[a] = static_cast<double>(g.wavenumber(idx[a]));
            k2 += xi[a] * xi[a];
        }
        if (k2 == 0.0) {
            c[i] = 0.0;
            continue;
        }
        c[i] *= std::complex<double>(0.0, -xi[axis] / std::sqrt(k2));
    }
    return fs;
}

ScalarField inverse_sqrt_laplacian(const ScalarField& f) {
    const Grid& g = f.grid();
    ScalarField fs = to_spectral(f);
    auto c = fs.coeffs();
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto idx = g.unflatten(i);
        double k2 = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            double xi = static_cast<double>(g.wavenumber(idx[a]));
            k2 += xi * xi;
        }
        c[i] = (k2 == 0.0) ? 0.0 : c[i] / std::sqrt(k2);
    }
    return fs;
}

VectorField sqg_velocity(const ScalarField& theta) {
    if (theta.grid().dim() != 2)
        throw std::invalid_argument("sqg_velocity: theta must live on a 2D grid");
    ScalarField ts = to_spectral(theta);
    std::vector<ScalarField> comps;
    comps.push_back(-1.0 * riesz(ts, 1));
    comps.push_back(riesz(ts, 0));
    return VectorField(std::move(comps));
}

double integral(const ScalarField& f) {
    const ScalarField fp = to_physical(f);
    long double s = 0.0L;
    for (double x : fp.values()) s += x;
    return static_cast<double>(s) * f.grid().cell_volume();
}

double inner_product(const ScalarField& a, const ScalarField& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("inner_product: grid mismatch");
    const ScalarField ap = to_physical(a);
    const ScalarField bp = to_physical(b);
    auto av = ap.values();
    auto bv = bp.values();
    long double s = 0.0L;
    for (std::size_t i = 0; i < av.size(); ++i) s += static_cast<long double>(av[i]) * bv[i];
    return static_cast<double>(s) * a.grid().cell_volume();
}

double inner_product(const VectorField& a, const VectorField& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("inner_product: grid mismatch");
    double s = 0.0;
    for (int c = 0; c < a.dim(); ++c) s += inner_product(a[c], b[c]);
    return s;
}

}  // namespace helidiag
