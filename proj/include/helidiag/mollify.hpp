// Standard mollifier eta_eps on the torus, periodic convolution, and the
// rate scans behind the mollifier approximation/derivative-growth estimates.
#pragma once

#include "helidiag/field.hpp"
#include "helidiag/scale_scan.hpp"

namespace helidiag {

/// Grid-sampled rescaled bump eta_eps(x) = eps^-d eta(x/eps) wrapped onto the
/// torus and renormalized so the discrete integral is exactly 1. Convolution
/// runs as the spectral multiplier given by the DFT of the sampled kernel,
/// i.e. a convex combination of lattice translates.
class MollifierKernel {
  public:
    MollifierKernel(const Grid& grid, double eps);

    double eps() const { return eps_; }
    const Grid& grid() const { return grid_; }
    /// Renormalized physical samples of eta_eps.
    const ScalarField& samples() const { return samples_; }
    /// Mass of the raw (analytically normalized) samples before renormalization.
    double raw_mass() const { return raw_mass_; }
    /// Real spectral multiplier m(xi); m(0) = 1.
    const std::vector<double>& multiplier() const { return multiplier_; }

    /// Smallest resolvable eps on a grid (2 grid spacings).
    static double min_eps(const Grid& grid);

  private:
    Grid grid_;
    double eps_;
    double raw_mass_;
    ScalarField samples_;
    std::vector<double> multiplier_;
};

ScalarField mollify(const ScalarField& f, const MollifierKernel& kernel);
VectorField mollify(const VectorField& v, const MollifierKernel& kernel);
ScalarField mollify(const ScalarField& f, double eps);
VectorField mollify(const VectorField& v, double eps);

enum class RateMode { approximation, derivative };

/// mode approximation: ||f^eps - f||_{L^p} per eps (expected slope alpha on an
/// alpha-regular field); mode derivative with order k: ||grad^k f^eps||_{L^p}
/// (expected slope alpha - k). Derivative magnitude is the Frobenius norm of
/// the order-k derivative tensor.
ScaleScan mollifier_rate_scan(const ScalarField& f, double p, const std::vector<double>& scales,
                              RateMode mode, int derivative_order = 1);

/// ||grad^k eta_eps||_{L^1} from the analytic kernel formula sampled on the
/// grid; scales like eps^-k.
double kernel_derivative_l1(const Grid& grid, double eps, int order);

}  // namespace helidiag
