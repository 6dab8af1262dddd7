// Spectral transforms and differential operators on periodic fields.
#pragma once

#include <functional>

#include "helidiag/field.hpp"

namespace helidiag {

/// Convert to the requested representation (returns a copy if already there).
ScalarField transform(const ScalarField& f, Representation target);
VectorField transform(const VectorField& v, Representation target);

ScalarField to_physical(const ScalarField& f);
ScalarField to_spectral(const ScalarField& f);
VectorField to_physical(const VectorField& v);
VectorField to_spectral(const VectorField& v);

/// Largest |Im| left over by the synthesis of a spectral field; diagnostic for
/// Hermitian symmetry / real-valuedness.
double max_imag_residual(const ScalarField& spectral);

/// d f / d x_axis by the i*xi multiplier; the Nyquist mode is zeroed.
ScalarField derivative(const ScalarField& f, int axis);
VectorField gradient(const ScalarField& f);

/// curl: d=3 gives a vector, use `curl`; d=2 gives the scalar d1 v2 - d2 v1.
VectorField curl(const VectorField& v);
ScalarField curl2d(const VectorField& v);

ScalarField divergence(const VectorField& v);

/// Projection onto divergence-free fields; the xi=0 (mean) mode is preserved.
VectorField leray_project(const VectorField& v);

/// Uniform-grid quadrature norm (sum |f|^p cellVolume)^{1/p}; p = inf -> max |f|.
/// Vector fields use the pointwise Euclidean magnitude.
double lp_norm(const ScalarField& f, double p);
double lp_norm(const VectorField& v, double p);

/// L^inf evaluated on a zero-pad refined grid (factor-times oversampling).
double linf_norm_oversampled(const ScalarField& f, int factor = 2);

/// Composite L^p(0,T;.) norm of per-snapshot values by trapezoid quadrature
/// over the time list; p = inf -> max.
double lp_time_norm(const std::vector<double>& times, const std::vector<double>& values,
                    double p);

/// Exact spectral phase shift: shift(f,y)(x) = f(x - y) for band-limited f.
/// Nyquist modes get the real part of the phase so the result stays real.
ScalarField shift(const ScalarField& f, const std::vector<double>& y);

/// Pointwise product of nodal samples (no dealiasing).
ScalarField multiply_nodal(const ScalarField& a, const ScalarField& b);

/// Dealiased product via 3/2 zero-padding; result spectral with Nyquist zeroed.
ScalarField multiply_dealiased(const ScalarField& a, const ScalarField& b);

/// Spectral resample onto a grid with `factor`-times the resolution.
ScalarField resample(const ScalarField& f, int new_n);

/// Riesz transform R_i: multiplier -i xi_i / |xi|, mean mode zeroed.
ScalarField riesz(const ScalarField& f, int axis);

/// |xi|^{-1} multiplier (mean zeroed); the SQG stream-operator inverse.
ScalarField inverse_sqrt_laplacian(const ScalarField& f);

/// SQG velocity v = (-R_2 theta, R_1 theta).
VectorField sqg_velocity(const ScalarField& theta);

/// Integral of f over the torus (quadrature).
double integral(const ScalarField& f);

/// Integral of a.b over the torus.
double inner_product(const VectorField& a, const VectorField& b);
double inner_product(const ScalarField& a, const ScalarField& b);

/// Apply a real radial-ish multiplier m(xi) given per-mode by a callback.
ScalarField apply_multiplier(const ScalarField& f,
                             const std::function<double(const std::array<int, 3>&)>& m);

}  // namespace helidiag
