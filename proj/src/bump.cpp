#include "helidiag/bump.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace helidiag {

double bump(double r) {
    double r2 = r * r;
    if (r2 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - r2));
}

double bump_derivative(double r) {
    double r2 = r * r;
    if (r2 >= 1.0) return 0.0;
    double denom = 1.0 - r2;
    return bump(r) * (-2.0 * r / (denom * denom));
}

void gauss_legendre(int n, double a, double b, double* nodes, double* weights) {
    // Newton iteration on Legendre polynomials, standard construction.
    const double eps = 1e-15;
    int m = (n + 1) / 2;
    double xm = 0.5 * (b + a);
    double xl = 0.5 * (b - a);
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < eps) break;
        }
        nodes[i] = xm - xl * z;
        nodes[n - 1 - i] = xm + xl * z;
        weights[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

namespace {

constexpr int kQuadOrder = 96;

double integrate(double a, double b, double (*f)(double)) {
    double nodes[kQuadOrder], weights[kQuadOrder];
    gauss_legendre(kQuadOrder, a, b, nodes, weights);
    double s = 0.0;
    for (int i = 0; i < kQuadOrder; ++i) s += weights[i] * f(nodes[i]);
    return s;
}

double bump_on_unit_interval(double s) { return bump(2.0 * s - 1.0); }

double smoothstep_denominator() {
    static const double denom = integrate(0.0, 1.0, bump_on_unit_interval);
    return denom;
}

double radial_2d(double r) { return r * bump(r); }
double radial_3d(double r) { return r * r * bump(r); }

}  // namespace

double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return integrate(0.0, t, bump_on_unit_interval) / smoothstep_denominator();
}

double mollifier_normalization(int dim) {
    static std::once_flag flag;
    static double c0[4] = {0, 0, 0, 0};
    std::call_once(flag, [] {
        c0[2] = 1.0 / (2.0 * M_PI * integrate(0.0, 1.0, radial_2d));
        c0[3] = 1.0 / (4.0 * M_PI * integrate(0.0, 1.0, radial_3d));
    });
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("mollifier_normalization: dim must be 2 or 3");
    return c0[dim];
}

}  // namespace helidiag
