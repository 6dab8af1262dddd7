#include "helidiag/commutator.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "helidiag/bump.hpp"
#include "helidiag/spectral.hpp"

namespace helidiag {

const ScalarField& CommutatorResult::scalar() const {
    if (components.size() != 1)
        throw std::logic_error("CommutatorResult: not a scalar commutator");
    return components.front();
}

VectorField CommutatorResult::vector() const {
    return VectorField(components);
}

double CommutatorResult::norm(double p) const {
    if (components.size() == 1) return lp_norm(components.front(), p);
    return lp_norm(VectorField(components), p);
}

CommutatorResult cet_commutator(const ScalarField& f, const ScalarField& g,
                                const MollifierKernel& kernel) {
    if (f.grid() != g.grid())
        throw std::invalid_argument("cet_commutator: fields on different grids");
    if (f.grid() != kernel.grid())
        throw std::invalid_argument("cet_commutator: kernel grid mismatch");
    ScalarField fg = multiply_dealiased(f, g);
    ScalarField smooth_product = multiply_dealiased(mollify(f, kernel), mollify(g, kernel));
    CommutatorResult out;
    out.eps = kernel.eps();
    out.components.push_back(mollify(fg, kernel) - smooth_product);
    return out;
}

CommutatorResult cet_commutator(const ScalarField& f, const ScalarField& g, double eps) {
    return cet_commutator(f, g, MollifierKernel(f.grid(), eps));
}

double cet_decomposition_check(const ScalarField& f, const ScalarField& g, double eps) {
    if (f.grid() != g.grid())
        throw std::invalid_argument("cet_decomposition_check: fields on different grids");
    const Grid& grid = f.grid();
    MollifierKernel kernel(grid, eps);

    // multiplier-path side, nodal products (the identity is pointwise)
    const ScalarField fp = to_physical(f);
    const ScalarField gp = to_physical(g);
    ScalarField lhs = to_physical(mollify(to_spectral(multiply_nodal(fp, gp)), kernel)) -
                      multiply_nodal(to_physical(mollify(fp, kernel)),
                                     to_physical(mollify(gp, kernel)));

    // direct-summation side over the kernel's own sample lattice
    const ScalarField fs = to_spectral(fp);
    const ScalarField gs = to_spectral(gp);
    const double h = grid.spacing();
    const int reach = static_cast<int>(std::floor(eps / h));
    const int d = grid.dim();

    std::vector<std::vector<double>> offsets;
    std::vector<double> weights;
    std::array<int, 3> k{0, 0, 0};
    std::function<void(int)> enumerate = [&](int axis) {
        if (axis == d) {
            double r2 = 0.0;
            std::vector<double> y(static_cast<std::size_t>(d));
            for (int a = 0; a < d; ++a) {
                y[static_cast<std::size_t>(a)] = h * k[a];
                r2 += y[static_cast<std::size_t>(a)] * y[static_cast<std::size_t>(a)];
            }
            double w = bump(std::sqrt(r2) / eps);
            if (w > 0.0) {
                offsets.push_back(std::move(y));
                weights.push_back(w);
            }
            return;
        }
        for (k[axis] = -reach; k[axis] <= reach; ++k[axis]) enumerate(axis + 1);
    };
    enumerate(0);
    double wsum = 0.0;
    for (double w : weights) wsum += w;
    for (double& w : weights) w /= wsum;

    const std::size_t size = grid.size();
    std::vector<double> integral_term(size, 0.0), f_moll(size, 0.0), g_moll(size, 0.0);
    auto fv = fp.values();
    auto gv = gp.values();
    for (std::size_t m = 0; m < offsets.size(); ++m) {
        const double w = weights[m];
        auto sf = to_physical(shift(fs, offsets[m])).values();
        auto sg = to_physical(shift(gs, offsets[m])).values();
        for (std::size_t i = 0; i < size; ++i) {
            integral_term[i] += w * (sf[i] - fv[i]) * (sg[i] - gv[i]);
            f_moll[i] += w * sf[i];
            g_moll[i] += w * sg[i];
        }
    }

    auto lv = lhs.values();
    double residual = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
        double rhs = integral_term[i] - (fv[i] - f_moll[i]) * (gv[i] - g_moll[i]);
        residual = std::max(residual, std::abs(lv[i] - rhs));
    }
    return residual;
}

ScalarField decomposition_integral_term(const ScalarField& f, const ScalarField& g, double eps,
                                        int refine) {
    if (refine < 1 || (refine & (refine - 1)) != 0)
        throw std::invalid_argument("decomposition_integral_term: refine must be a power of two");
    const Grid& base = f.grid();
    const int fine_n = base.n() * refine;
    const ScalarField F = refine == 1 ? to_physical(f) : to_physical(resample(f, fine_n));
    const ScalarField G = refine == 1 ? to_physical(g) : to_physical(resample(g, fine_n));
    const Grid fine = F.grid();
    MollifierKernel kernel(fine, eps);

    // sum_m w_m df dg = (FG)^e - F G^e - G F^e + FG on the fine lattice
    ScalarField FG = multiply_nodal(F, G);
    ScalarField q = to_physical(mollify(to_spectral(FG), kernel));
    q -= multiply_nodal(F, to_physical(mollify(G, kernel)));
    q -= multiply_nodal(G, to_physical(mollify(F, kernel)));
    q += FG;

    if (refine == 1) return q;
    // stride-subsample onto the base nodes
    std::vector<double> vals(base.size());
    auto qv = q.values();
    for (std::size_t i = 0; i < base.size(); ++i) {
        auto idx = base.unflatten(i);
        std::array<int, 3> fi{0, 0, 0};
        for (int a = 0; a < base.dim(); ++a) fi[a] = idx[a] * refine;
        vals[i] = qv[fine.flatten(fi)];
    }
    return ScalarField::from_samples(base, std::move(vals));
}

double decomposition_quadrature_error(const ScalarField& f, const ScalarField& g, double eps,
                                      int refine, int refine_ref) {
    ScalarField q = decomposition_integral_term(f, g, eps, refine);
    ScalarField ref = decomposition_integral_term(f, g, eps, refine_ref);
    q -= ref;
    return lp_norm(q, std::numeric_limits<double>::infinity());
}

CommutatorResult cross_commutator(const VectorField& f, const VectorField& g,
                                  const MollifierKernel& kernel) {
    if (f.grid() != g.grid())
        throw std::invalid_argument("cross_commutator: fields on different grids");
    if (f.dim() != g.dim())
        throw std::invalid_argument("cross_commutator: dimension mismatch");
    auto entry = [&](int i, int j) {
        return cet_commutator(f[i], g[j], kernel).components.front();
    };
    CommutatorResult out;
    out.eps = kernel.eps();
    if (f.dim() == 3) {
        out.components.push_back(entry(1, 2) - entry(2, 1));
        out.components.push_back(entry(2, 0) - entry(0, 2));
        out.components.push_back(entry(0, 1) - entry(1, 0));
    } else {
        out.components.push_back(entry(0, 1) - entry(1, 0));
    }
    return out;
}

CommutatorResult cross_commutator(const VectorField& f, const VectorField& g, double eps) {
    return cross_commutator(f, g, MollifierKernel(f.grid(), eps));
}

ScaleScan commutator_scaling_scan(const ScalarField& f, const ScalarField& g,
                                  const std::vector<double>& scales, double q,
                                  double expected_exponent) {
    if (scales.size() < 4)
        throw std::invalid_argument("commutator_scaling_scan: fit refused, need >= 4 scales");
    const ScalarField fs = to_spectral(f);
    const ScalarField gs = to_spectral(g);
    return run_scan(scales,
                    [&](double eps) { return cet_commutator(fs, gs, eps).norm(q); },
                    expected_exponent);
}

ScaleScan commutator_scaling_scan(const ScalarSeries& f, const ScalarSeries& g,
                                  const std::vector<double>& scales, double p, double q,
                                  double expected_exponent) {
    if (scales.size() < 4)
        throw std::invalid_argument("commutator_scaling_scan: fit refused, need >= 4 scales");
    if (f.times != g.times)
        throw std::invalid_argument("commutator_scaling_scan: series on different time lists");
    auto value = [&](double eps) {
        MollifierKernel kernel(f.snapshots.front().grid(), eps);
        std::vector<double> per_time;
        per_time.reserve(f.size());
        for (std::size_t t = 0; t < f.size(); ++t)
            per_time.push_back(cet_commutator(f.snapshots[t], g.snapshots[t], kernel).norm(q));
        return lp_time_norm(f.times, per_time, p);
    };
    return run_scan(scales, value, expected_exponent);
}

}  // namespace helidiag
