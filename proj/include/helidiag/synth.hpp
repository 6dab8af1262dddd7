// Seeded generators: prescribed-Besov random fields, exact classical flows,
// and manufactured compressible states.
#pragma once

#include <cstdint>
#include <functional>

#include "helidiag/field.hpp"

namespace helidiag {

enum class BesovVariant { infinity_type, cN_type };

/// Target: 2^{j alpha} ||block_j f||_{L^p} = 1 (infinity_type) or
/// cN_decay(j) (cN_type, default 1/(1+j)) on shells j_lo..j_hi.
struct BesovFieldSpec {
    double alpha = 1.0 / 3.0;
    double p = 3.0;
    BesovVariant variant = BesovVariant::infinity_type;
    std::function<double(int)> cN_decay;  // defaults to 1/(1+j)
    std::uint64_t seed = 0;
    int j_lo = 0;
    int j_hi = -1;  // -1: up to the grid's representable j_max

    double target_compensated(int j) const;
};

/// Shell-by-shell random phases with per-shell post-hoc calibration of the
/// compensated block norms. Deterministic in (grid, spec).
ScalarField random_besov_field(const Grid& grid, const BesovFieldSpec& spec);

/// Componentwise generator; `solenoidal` applies the Leray projection per
/// shell before calibration.
VectorField random_besov_vector_field(const Grid& grid, const BesovFieldSpec& spec,
                                      bool solenoidal);

/// Mean-zero scalar whose gradient carries a (alpha, c(N))-type profile:
/// theta = |xi|^{-1} applied to a calibrated alpha-field.
ScalarField random_sqg_theta(const Grid& grid, double alpha, double p, BesovVariant variant,
                             std::uint64_t seed);

VectorField taylor_green(const Grid& grid);
VectorField abc_flow(const Grid& grid, double A, double B, double C);

struct PressureLaw;  // conservation module

struct CompressibleState {
    ScalarField rho;
    VectorField velocity;
    double c1 = 0.0;  // declared lower density bound
    double c2 = 0.0;  // declared upper density bound
};

/// rho = 1 + amplitude * band-limited random profile (min rho >= 1 - amplitude),
/// velocity = random solenoidal field; declared (c1, c2) bracket the samples.
CompressibleState manufactured_compressible(const Grid& grid, double amplitude,
                                            std::uint64_t seed);

/// Smooth deterministic state used by the conservation benchmarks:
/// rho = 1 + amplitude sin x1 sin x2 sin x3, v = ABC(1,1,1).
CompressibleState manufactured_compressible_smooth(const Grid& grid, double amplitude);

}  // namespace helidiag
