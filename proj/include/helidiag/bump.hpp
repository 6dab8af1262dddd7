// The C-infinity bump primitive shared by the mollifier and the dyadic cutoffs.
#pragma once

namespace helidiag {

/// exp(-1/(1-r^2)) for |r| < 1, 0 outside (unnormalized radial bump profile).
double bump(double r);

/// d/dr of bump(r).
double bump_derivative(double r);

/// Smoothstep built from the bump: S(0)=0, S(1)=1, C-infinity, monotone.
/// S(t) = int_0^t bump(2s-1) ds / int_0^1 bump(2s-1) ds.
double smoothstep(double t);

/// Normalization constant C0 with C0 * int_{B(0,1)} bump(|x|) dx = 1 in dim d.
double mollifier_normalization(int dim);

/// Nodes/weights of n-point Gauss-Legendre on [a,b].
void gauss_legendre(int n, double a, double b, double* nodes, double* weights);

}  // namespace helidiag
