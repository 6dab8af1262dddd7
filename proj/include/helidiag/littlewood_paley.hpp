// Dyadic frequency decomposition, Besov semi-norms, the c(N) diagnostic
// profile, the Bernstein check, and the finite-difference characterization.
#pragma once

#include <cmath>
#include <limits>

#include "helidiag/field.hpp"
#include "helidiag/scale_scan.hpp"

namespace helidiag {

/// Radial dyadic cutoffs. rho = 1 for r <= 3/4 and 0 for r >= 1, smooth
/// monotone in between; phi(r) = rho(r/2) - rho(r) is supported in the shell
/// [3/4, 2] (inside the classical [3/4, 8/3] annulus). With integer torus
/// frequencies this makes j = 0 the lowest nonempty block and the partition
/// of unity exact from |xi| = 1 upward.
class DyadicPartition {
  public:
    explicit DyadicPartition(const Grid& grid);

    int j_min() const { return 0; }
    int j_max() const { return j_max_; }
    int shells() const { return j_max_ + 1; }

    /// rho(r) and phi(2^{-j} |xi|) evaluated exactly (cached per radius).
    double rho(double r) const;
    double phi_block(int j, double radius) const;

    const Grid& grid() const { return grid_; }

  private:
    Grid grid_;
    int j_max_;
    mutable std::vector<std::pair<double, double>> rho_cache_;  // sorted by radius
};

/// Besov parameters: exponent s (alpha), integrability p, summation q.
/// q = infinity or the symbolic c(N) tag share the same semi-norm value.
struct BesovParams {
    double s = 1.0 / 3.0;
    double p = 3.0;
    double q = std::numeric_limits<double>::infinity();
    bool q_is_cN = false;
};

/// The multiplier phi(2^{-j} xi) applied in spectral space.
ScalarField dyadic_block(const ScalarField& f, int j, const DyadicPartition& partition);
VectorField dyadic_block(const VectorField& f, int j, const DyadicPartition& partition);

/// ell^q over j of 2^{js} ||block_j f||_{L^p}.
double besov_seminorm(const ScalarField& f, const BesovParams& params);
double besov_seminorm(const VectorField& f, const BesovParams& params);

/// Inhomogeneous norm ||f||_{L^p} + semi-norm.
double besov_norm(const ScalarField& f, const BesovParams& params);

/// The compensated sequence 2^{j alpha} ||block_j f||_{L^p} with its trend.
struct BesovProfile {
    double alpha = 0.0;
    double p = 0.0;
    std::vector<int> shells;
    std::vector<double> block_norms;
    std::vector<double> compensated;
    Trend verdict = Trend::insufficient;

    double sup_compensated() const;
    std::string to_csv() const;
    std::string to_json() const;
};

BesovProfile cN_profile(const ScalarField& f, double alpha, double p);
BesovProfile cN_profile(const VectorField& f, double alpha, double p);

/// Finite-difference modulus: per scale, sup over sampled directions of
/// ||f(.-y) - f||_{L^p} / |y|^alpha. Directions: the axis unit vectors plus
/// 2*d seeded random unit vectors (fixed internal seed).
ScaleScan finite_difference_modulus(const ScalarField& f, double alpha, double p,
                                    const std::vector<double>& scales);

/// Both sides of the Bernstein inequality for block j:
/// lhs = ||block_j f||_{L^b}, rhs = 2^{jd(1/a-1/b)} ||block_j f||_{L^a}.
std::pair<double, double> bernstein_check(const ScalarField& f, int j, double a, double b);

/// Both sides of the product estimate in finite-difference form:
/// lhs = difference semi-norm of f*g at alpha,p; rhs = ||f||_inf * S(g) +
/// S_inf(f) * ||g||_p with S the same difference semi-norm.
std::pair<double, double> product_besov_check(const ScalarField& f, const ScalarField& g,
                                              double alpha, double p);

}  // namespace helidiag
