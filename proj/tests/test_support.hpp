// Shared helpers for the test suites: independent oracles and small builders.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "helidiag/field.hpp"
#include "helidiag/spectral.hpp"
#include "helidiag/synth_rng.hpp"

namespace helidiag::testing {

/// Sample an analytic function on the grid.
inline ScalarField sample(const Grid& g, const std::function<double(double, double, double)>& f) {
    std::vector<double> vals(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto idx = g.unflatten(i);
        double x = g.coord(idx[0]);
        double y = g.dim() > 1 ? g.coord(idx[1]) : 0.0;
        double z = g.dim() > 2 ? g.coord(idx[2]) : 0.0;
        vals[i] = f(x, y, z);
    }
    return ScalarField::from_samples(g, std::move(vals));
}

inline VectorField sample_vector(
    const Grid& g, const std::vector<std::function<double(double, double, double)>>& comps) {
    std::vector<ScalarField> fields;
    for (const auto& f : comps) fields.push_back(sample(g, f));
    return VectorField(std::move(fields));
}

/// Direct O(N^2d) DFT with the 1/N^d convention; brute-force oracle for the
/// FFT path. Only usable on small grids.
inline std::vector<std::complex<double>> direct_dft(const Grid& g,
                                                    std::span<const double> values) {
    const std::size_t size = g.size();
    std::vector<std::complex<double>> out(size, {0.0, 0.0});
    for (std::size_t ki = 0; ki < size; ++ki) {
        auto kidx = g.unflatten(ki);
        std::complex<double> acc = 0.0;
        for (std::size_t xi = 0; xi < size; ++xi) {
            auto xidx = g.unflatten(xi);
            double phase = 0.0;
            for (int a = 0; a < g.dim(); ++a)
                phase -= g.wavenumber(kidx[a]) * g.coord(xidx[a]);
            acc += values[xi] * std::polar(1.0, phase);
        }
        out[ki] = acc / static_cast<double>(size);
    }
    return out;
}

/// Max-abs difference of two physical fields.
inline double max_abs_diff(const ScalarField& a, const ScalarField& b) {
    auto av = to_physical(a).values();
    auto bv = to_physical(b).values();
    double m = 0.0;
    for (std::size_t i = 0; i < av.size(); ++i) m = std::max(m, std::abs(av[i] - bv[i]));
    return m;
}

inline double max_abs_diff(const VectorField& a, const VectorField& b) {
    double m = 0.0;
    for (int c = 0; c < a.dim(); ++c) m = std::max(m, max_abs_diff(a[c], b[c]));
    return m;
}

inline double max_abs(const ScalarField& f) {
    return lp_norm(f, std::numeric_limits<double>::infinity());
}

/// Random band-limited real field with modes |xi|_inf <= band, unit-ish scale.
inline ScalarField random_band_limited(const Grid& g, int band, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::complex<double>> coeffs(g.size(), {0.0, 0.0});
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto idx = g.unflatten(i);
        int k[3] = {0, 0, 0};
        bool ok = true;
        double r2 = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            k[a] = g.wavenumber(idx[a]);
            if (std::abs(k[a]) > band || idx[a] == g.nyquist()) ok = false;
            r2 += static_cast<double>(k[a]) * k[a];
        }
        if (!ok || r2 == 0.0) continue;
        int lead = 0;
        for (int a = 0; a < g.dim(); ++a)
            if (k[a] != 0) { lead = k[a]; break; }
        if (lead <= 0) continue;
        double amp = (rng.uniform() * 0.5 + 0.5) / (1.0 + r2);
        double phase = kTwoPi * rng.uniform();
        std::array<int, 3> conj{0, 0, 0};
        for (int a = 0; a < g.dim(); ++a) conj[a] = k[a] > 0 ? g.n() - k[a] : -k[a];
        coeffs[i] = std::polar(amp, phase);
        coeffs[g.flatten(conj)] = std::conj(coeffs[i]);
    }
    return ScalarField::from_spectrum(g, std::move(coeffs));
}

}  // namespace helidiag::testing
