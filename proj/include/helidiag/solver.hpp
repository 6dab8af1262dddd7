// Desk-scale pseudo-spectral integrators: 3D incompressible Euler in velocity
// form with Leray projection, and 2D SQG in conservative form. RK4, fixed dt,
// 2/3-rule dealiasing, per-step conservation log.
#pragma once

#include <optional>
#include <string>

#include "helidiag/field.hpp"

namespace helidiag {

enum class SolverSystem { euler3d, sqg2d };

struct SolverConfig {
    double dt = 1e-3;
    double t_end = 0.5;
    int record_every = 10;
    SolverSystem system = SolverSystem::euler3d;
};

struct ConservationSample {
    double t = 0.0;
    double energy = 0.0;        // euler: (1/2)||v||^2; sqg: ||theta||_{L^2}
    double helicity = 0.0;      // euler only
    double hamiltonian = 0.0;   // sqg: (1/2) int theta (-Lap)^{-1/2} theta
    double general_helicity_x = 0.0;  // sqg: int theta d_1 theta
    double general_helicity_y = 0.0;  // sqg: int theta d_2 theta
    double divergence = 0.0;    // euler: max-abs of div v
};

struct SolverResult {
    std::vector<ConservationSample> log;
    double cfl_advisory = 0.0;  // u_max dt / h at t = 0
    std::string to_manifest_json(const SolverConfig& cfg,
                                 const std::vector<std::string>& snapshot_paths) const;
};

/// Thrown when a step produces non-finite values; carries the last finite time.
struct NumericAbort : std::runtime_error {
    double last_finite_time;
    int last_finite_step;
    NumericAbort(double t, int step)
        : std::runtime_error("solver: non-finite values at t > " + std::to_string(t) +
                             " (last finite step " + std::to_string(step) + ")"),
          last_finite_time(t),
          last_finite_step(step) {}
};

/// 2/3-rule mask: zero modes with any |xi_a| > floor((n-1)/3). Idempotent.
ScalarField dealias_23(const ScalarField& f);
VectorField dealias_23(const VectorField& v);

SolverResult euler3d_integrate(const VectorField& v0, const SolverConfig& cfg,
                               VectorSeries* trajectory = nullptr);

SolverResult sqg2d_integrate(const ScalarField& theta0, const SolverConfig& cfg,
                             ScalarSeries* trajectory = nullptr);

}  // namespace helidiag
