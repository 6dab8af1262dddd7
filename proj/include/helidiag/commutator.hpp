// Constantin-E-Titi commutators (fg)^eps - f^eps g^eps, the exact
// decomposition identity, the cross-product variant, and scaling scans.
#pragma once

#include "helidiag/field.hpp"
#include "helidiag/mollify.hpp"
#include "helidiag/scale_scan.hpp"

namespace helidiag {

struct CommutatorResult {
    std::vector<ScalarField> components;  // 1 entry for the scalar commutator
    double eps = 0.0;

    const ScalarField& scalar() const;
    VectorField vector() const;
    double norm(double p) const;  // Euclidean magnitude for multi-component
};

/// (fg)^eps - f^eps g^eps with both products dealiased.
CommutatorResult cet_commutator(const ScalarField& f, const ScalarField& g,
                                const MollifierKernel& kernel);
CommutatorResult cet_commutator(const ScalarField& f, const ScalarField& g, double eps);

/// Max-abs residual of the decomposition identity
///   (fg)^e - f^e g^e = int eta_e(y) df dg dy - (f - f^e)(g - g^e),
/// with the left side through the spectral-multiplier path and the right side
/// by direct summation over the kernel's own sample lattice using exact
/// shifts. The identity is algebraic for the discrete mollifier, so the
/// residual measures only the independence of the two code paths.
double cet_decomposition_check(const ScalarField& f, const ScalarField& g, double eps);

/// The kernel-integral term int eta_e(y) df dg dy quadratured on a lattice
/// refined by `refine` (power of two), evaluated at the base grid nodes.
ScalarField decomposition_integral_term(const ScalarField& f, const ScalarField& g, double eps,
                                        int refine);

/// Max-abs gap between the integral term at `refine` and at `refine_ref`;
/// the kernel quadrature converges superalgebraically, so doubling `refine`
/// shrinks this sharply.
double decomposition_quadrature_error(const ScalarField& f, const ScalarField& g, double eps,
                                      int refine, int refine_ref = 8);

/// Componentwise determinant expansion: each entry is a difference of scalar
/// commutators. d=3 gives 3 components; d=2 the scalar cross product.
CommutatorResult cross_commutator(const VectorField& f, const VectorField& g,
                                  const MollifierKernel& kernel);
CommutatorResult cross_commutator(const VectorField& f, const VectorField& g, double eps);

/// ||(fg)^e - f^e g^e||_{L^q} over an eps grid, compensated by
/// eps^{expected_exponent} (alpha + beta for calibrated inputs).
ScaleScan commutator_scaling_scan(const ScalarField& f, const ScalarField& g,
                                  const std::vector<double>& scales, double q,
                                  double expected_exponent);

/// Composite L^p(0,T;L^q) version for snapshot series sharing one time list.
ScaleScan commutator_scaling_scan(const ScalarSeries& f, const ScalarSeries& g,
                                  const std::vector<double>& scales, double p, double q,
                                  double expected_exponent);

}  // namespace helidiag
