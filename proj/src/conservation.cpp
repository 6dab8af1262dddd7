#include "helidiag/conservation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "helidiag/bump.hpp"
#include "helidiag/commutator.hpp"
#include "helidiag/spectral.hpp"

namespace helidiag {

PressureLaw::PressureLaw(double kappa_, double gamma_) : kappa(kappa_), gamma(gamma_) {
    if (!(kappa > 0.0)) throw std::invalid_argument("PressureLaw: kappa must be positive");
    if (!(gamma > 1.0)) throw std::invalid_argument("PressureLaw: gamma must exceed 1");
}

double PressureLaw::pi(double rho) const { return kappa * std::pow(rho, gamma); }
double PressureLaw::pi_prime(double rho) const { return kappa * gamma * std::pow(rho, gamma - 1.0); }
double PressureLaw::pi_second(double rho) const {
    return kappa * gamma * (gamma - 1.0) * std::pow(rho, gamma - 2.0);
}
double PressureLaw::Pi(double rho) const {
    return kappa * gamma * (std::pow(rho, gamma - 1.0) - 1.0) / (gamma - 1.0);
}
double PressureLaw::commutator_constant(double c1, double c2) const {
    return 0.5 * std::max(std::abs(pi_second(c1)), std::abs(pi_second(c2)));
}

std::string to_string(DefectTerm term) {
    switch (term) {
        case DefectTerm::HelicityFlux: return "HelicityFlux";
        case DefectTerm::I1: return "I1";
        case DefectTerm::I2: return "I2";
        case DefectTerm::I3: return "I3";
        case DefectTerm::I4: return "I4";
        case DefectTerm::SQG_I: return "SQG_I";
        case DefectTerm::SQG_II: return "SQG_II";
        case DefectTerm::SQG_III: return "SQG_III";
        case DefectTerm::PressureCommutator: return "PressureCommutator";
    }
    return "?";
}

std::string DefectReport::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["term_id"] = to_string(term_id);
    auto& pts = j["scan"] = nlohmann::json::array();
    for (std::size_t i = 0; i < scan.scales.size(); ++i)
        pts.push_back({{"eps", scan.scales[i]}, {"value", scan.values[i]}});
    j["fit"] = {{"slope", scan.fit.slope},
                {"r2", scan.fit.r_squared},
                {"window", {scan.fit.window_lo, scan.fit.window_hi}},
                {"valid", scan.fit.valid}};
    j["verdict"] = to_string(verdict);
    if (!notes.empty()) j["notes"] = notes;
    return j.dump(2);
}

std::string DefectReport::to_csv() const {
    std::ostringstream out;
    out << "term,eps,value\n";
    out.precision(17);
    for (std::size_t i = 0; i < scan.scales.size(); ++i)
        out << to_string(term_id) << ',' << scan.scales[i] << ',' << scan.values[i] << '\n';
    return out.str();
}

double helicity(const VectorField& v) {
    if (v.dim() != 3)
        throw std::invalid_argument("helicity: defined for d=3 (use sqg_helicity in 2D)");
    return inner_product(to_physical(curl(v)), to_physical(v));
}

double energy(const VectorField& v) { return 0.5 * inner_product(v, v); }

double compressible_energy(const ScalarField& rho, const VectorField& v,
                           const PressureLaw& law) {
    const ScalarField rp = to_physical(rho);
    const VectorField vp = to_physical(v);
    auto rv = rp.values();
    double rho_min = rv[0];
    for (double r : rv) rho_min = std::min(rho_min, r);
    if (rho_min <= 0.0) {
        std::ostringstream msg;
        msg << "compressible_energy: nonpositive density, min rho = " << rho_min;
        throw std::domain_error(msg.str());
    }
    long double sum = 0.0L;
    for (std::size_t i = 0; i < rv.size(); ++i) {
        double v2 = 0.0;
        for (int a = 0; a < vp.dim(); ++a) {
            double c = vp[a].values()[i];
            v2 += c * c;
        }
        sum += 0.5 * rv[i] * v2 + law.kappa * std::pow(rv[i], law.gamma) / (law.gamma - 1.0);
    }
    return static_cast<double>(sum) * rho.grid().cell_volume();
}

namespace {

DefectReport make_report(DefectTerm term, ScaleScan scan) {
    DefectReport rep{term, std::move(scan)};
    rep.verdict = rep.scan.trend;
    return rep;
}

}  // namespace

double helicity_flux_defect(const VectorField& v, const MollifierKernel& kernel) {
    if (v.dim() != 3) throw std::invalid_argument("helicity_flux_defect: needs d=3");
    const VectorField vs = to_spectral(v);
    const VectorField vm = mollify(vs, kernel);
    const VectorField omega_m = curl(vm);
    // T_ij = v^e_i v^e_j - (v_i v_j)^e, contracted against d_i w^e_j
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            ScalarField t = multiply_dealiased(vm[i], vm[j]) -
                            mollify(multiply_dealiased(vs[i], vs[j]), kernel);
            double contrib = inner_product(t, derivative(omega_m[j], i));
            if (i != j) contrib += inner_product(t, derivative(omega_m[i], j));
            total += contrib;
        }
    }
    return 2.0 * total;
}

double helicity_flux_defect(const VectorField& v, double eps) {
    return helicity_flux_defect(v, MollifierKernel(v.grid(), eps));
}

DefectReport helicity_flux_scan(const VectorField& v, const std::vector<double>& scales,
                                double expected_exponent) {
    const VectorField vs = to_spectral(v);
    ScaleScan scan = run_scan(
        scales,
        [&](double eps) { return std::abs(helicity_flux_defect(vs, eps)); },
        expected_exponent);
    return make_report(DefectTerm::HelicityFlux, std::move(scan));
}

double helicity_flux_time_integral(const VectorSeries& series, double eps, bool weighted) {
    if (series.size() < 2)
        throw std::invalid_argument("helicity_flux_time_integral: need >= 2 snapshots");
    MollifierKernel kernel(series.snapshots.front().grid(), eps);
    const double t0 = series.times.front();
    const double t1 = series.times.back();
    long double sum = 0.0L;
    std::vector<double> vals(series.size());
    for (std::size_t k = 0; k < series.size(); ++k) {
        double w = 1.0;
        if (weighted) w = bump(2.0 * (series.times[k] - t0) / (t1 - t0) - 1.0);
        vals[k] = w * helicity_flux_defect(series.snapshots[k], kernel);
    }
    for (std::size_t k = 0; k + 1 < series.size(); ++k)
        sum += 0.5 * (series.times[k + 1] - series.times[k]) * (vals[k] + vals[k + 1]);
    return static_cast<double>(sum);
}

double vorticity_transport_residual(const VectorField& v, double eps) {
    if (v.dim() != 3) throw std::invalid_argument("vorticity_transport_residual: needs d=3");
    MollifierKernel kernel(v.grid(), eps);
    const VectorField vs = to_spectral(v);
    CommutatorResult cc = cross_commutator(vs, curl(vs), kernel);
    return lp_norm(curl(cc.vector()), 1.5);
}

DefectReport vorticity_transport_scan(const VectorField& v, const std::vector<double>& scales,
                                      double expected_exponent) {
    const VectorField vs = to_spectral(v);
    ScaleScan scan = run_scan(
        scales, [&](double eps) { return vorticity_transport_residual(vs, eps); },
        expected_exponent);
    return make_report(DefectTerm::HelicityFlux, std::move(scan));
}

namespace {

struct CompressibleFields {
    ScalarField rho_m;        // rho^e (physical)
    VectorField v_m;          // v^e (spectral)
    VectorField rho_v_m;      // (rho v)^e (spectral)
    std::vector<ScalarField> momentum_comm;  // (rho v)^e - rho^e v^e (physical)
    double c1, c2;
};

double field_min(const ScalarField& f) {
    auto v = to_physical(f).values();
    double m = v[0];
    for (double x : v) m = std::min(m, x);
    return m;
}
double field_max(const ScalarField& f) {
    auto v = to_physical(f).values();
    double m = v[0];
    for (double x : v) m = std::max(m, x);
    return m;
}

}  // namespace

std::map<DefectTerm, double> compressible_defects(const ScalarField& rho, const VectorField& v,
                                                  const PressureLaw& law, double eps,
                                                  const CompressibleDefectOptions& opts) {
    const Grid& grid = rho.grid();
    if (v.grid() != grid)
        throw std::invalid_argument("compressible_defects: rho and v on different grids");
    const double rho_min = field_min(rho);
    if (rho_min <= 0.0) {
        std::ostringstream msg;
        msg << "compressible_defects: nonpositive density, min rho = " << rho_min;
        throw std::domain_error(msg.str());
    }

    MollifierKernel kernel(grid, eps);
    const ScalarField rho_s = to_spectral(rho);
    const VectorField v_s = to_spectral(v);
    const ScalarField rho_m = to_physical(mollify(rho_s, kernel));
    const VectorField v_m = mollify(v_s, kernel);
    const int d = grid.dim();

    // phi = s * (1,...,1) with scalar s (default 1); gradient of s enters I3/I4
    ScalarField phi = opts.test_function
                          ? to_physical(*opts.test_function)
                          : ScalarField::from_samples(grid, std::vector<double>(grid.size(), 1.0));
    VectorField grad_phi = gradient(phi);

    // (rho v)^e and the momentum commutator (rho v)^e - rho^e v^e
    std::vector<ScalarField> rho_v_m, mom_comm;
    for (int a = 0; a < d; ++a) {
        ScalarField rho_va = multiply_dealiased(rho_s, v_s[a]);
        ScalarField m = mollify(rho_va, kernel);
        rho_v_m.push_back(m);
        mom_comm.push_back(to_physical(m) - multiply_nodal(rho_m, to_physical(v_m[a])));
    }

    auto inv_rho_m = [&](int power) {
        std::vector<double> vals(grid.size());
        auto rm = rho_m.values();
        for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = 1.0 / std::pow(rm[i], power);
        return ScalarField::from_samples(grid, std::move(vals));
    };
    const ScalarField inv1 = inv_rho_m(1);
    const ScalarField inv2 = inv_rho_m(2);

    std::map<DefectTerm, double> out;

    // I1 = -int (1/rho^e) [(rho v)^e - rho^e v^e]_j  d_j v^e_i  phi_i
    {
        long double sum = 0.0L;
        auto phi_v = phi.values();
        auto invv = inv1.values();
        for (int i = 0; i < d; ++i) {
            std::vector<std::span<const double>> dv;
            std::vector<ScalarField> dv_fields;
            for (int j = 0; j < d; ++j) dv_fields.push_back(to_physical(derivative(v_m[i], j)));
            long double acc = 0.0L;
            for (int j = 0; j < d; ++j) {
                auto cj = mom_comm[static_cast<std::size_t>(j)].values();
                auto dj = dv_fields[static_cast<std::size_t>(j)].values();
                for (std::size_t n = 0; n < grid.size(); ++n)
                    acc += static_cast<long double>(invv[n]) * cj[n] * dj[n] * phi_v[n];
            }
            sum += acc;
        }
        out[DefectTerm::I1] = std::abs(static_cast<double>(sum) * grid.cell_volume());
    }

    // I2 = int [(rho v)^e - rho^e v^e]_i ( div(rho v)^e / (rho^e)^2 ) phi_i
    {
        ScalarField div_rho_v = derivative(rho_v_m[0], 0);
        for (int a = 1; a < d; ++a) div_rho_v += derivative(rho_v_m[static_cast<std::size_t>(a)], a);
        auto divv = to_physical(div_rho_v).values();
        auto invv = inv2.values();
        auto phi_v = phi.values();
        long double sum = 0.0L;
        for (int i = 0; i < d; ++i) {
            auto ci = mom_comm[static_cast<std::size_t>(i)].values();
            for (std::size_t n = 0; n < grid.size(); ++n)
                sum += static_cast<long double>(ci[n]) * divv[n] * invv[n] * phi_v[n];
        }
        out[DefectTerm::I2] = std::abs(static_cast<double>(sum) * grid.cell_volume());
    }

    // I3 = int [(rho v x v)^e - (rho v)^e x v^e]_{ij} (-(d_j rho^e)/(rho^e)^2 phi_i
    //      + (d_j phi_i)/rho^e)
    {
        VectorField grad_rho_m = gradient(mollify(rho_s, kernel));
        long double sum = 0.0L;
        auto phi_v = phi.values();
        auto inv1v = inv1.values();
        auto inv2v = inv2.values();
        for (int i = 0; i < d; ++i) {
            ScalarField rho_vi = multiply_dealiased(rho_s, v_s[i]);
            for (int j = 0; j < d; ++j) {
                // (rho v_i v_j)^e - (rho v_i)^e v_j^e, dealiased products
                ScalarField rho_vi_vj = multiply_dealiased(rho_vi, v_s[j]);
                ScalarField t = to_physical(mollify(rho_vi_vj, kernel)) -
                                multiply_nodal(to_physical(mollify(rho_vi, kernel)),
                                               to_physical(v_m[j]));
                auto tv = t.values();
                auto gr = to_physical(grad_rho_m[j]).values();
                auto gp = to_physical(derivative(to_spectral(phi), j)).values();
                for (std::size_t n = 0; n < grid.size(); ++n)
                    sum += static_cast<long double>(tv[n]) *
                           (-gr[n] * inv2v[n] * phi_v[n] + gp[n] * inv1v[n]);
            }
        }
        out[DefectTerm::I3] = std::abs(static_cast<double>(sum) * grid.cell_volume());
    }

    // I4 = int [pi(rho^e) - pi^e(rho)] ( div phi / rho^e - phi . grad rho^e / (rho^e)^2 )
    {
        auto rm = rho_m.values();
        std::vector<double> pi_comm(grid.size());
        std::vector<double> pi_rho(grid.size());
        auto rv = to_physical(rho).values();
        for (std::size_t n = 0; n < grid.size(); ++n) pi_rho[n] = law.pi(rv[n]);
        ScalarField pi_rho_m =
            to_physical(mollify(to_spectral(ScalarField::from_samples(grid, pi_rho)), kernel));
        auto pim = pi_rho_m.values();
        for (std::size_t n = 0; n < grid.size(); ++n) pi_comm[n] = law.pi(rm[n]) - pim[n];

        VectorField grad_rho_m = gradient(mollify(rho_s, kernel));
        auto inv1v = inv1.values();
        auto inv2v = inv2.values();
        auto phi_v = phi.values();
        long double sum = 0.0L;
        for (int i = 0; i < d; ++i) {
            auto gp = to_physical(grad_phi[i]).values();
            auto gr = to_physical(grad_rho_m[i]).values();
            for (std::size_t n = 0; n < grid.size(); ++n)
                sum += static_cast<long double>(pi_comm[n]) *
                       (gp[n] * inv1v[n] - phi_v[n] * gr[n] * inv2v[n]);
        }
        out[DefectTerm::I4] = std::abs(static_cast<double>(sum) * grid.cell_volume());
    }
    return out;
}

std::vector<DefectReport> compressible_defect_scan(const ScalarField& rho, const VectorField& v,
                                                   const PressureLaw& law,
                                                   const std::vector<double>& scales,
                                                   const CompressibleDefectOptions& opts) {
    std::map<DefectTerm, std::vector<double>> values;
    for (double eps : scales) {
        auto terms = compressible_defects(rho, v, law, eps, opts);
        for (const auto& [term, val] : terms) values[term].push_back(val);
    }
    std::vector<DefectReport> reports;
    for (const auto& [term, vals] : values) {
        ScaleScan scan;
        scan.scales = scales;
        scan.values = vals;
        scan.compensation_exponent = 0.0;
        scan.fit = fit_power_law(scan.scales, scan.values);
        scan.trend = classify_scale_trend(scan.scales, scan.values, 0.0);
        DefectReport rep = make_report(term, std::move(scan));
        if (opts.c1 > 0.0) {
            double lo = field_min(rho), hi = field_max(rho);
            if (lo < opts.c1 || hi > opts.c2) {
                std::ostringstream note;
                note << "density range [" << lo << ", " << hi << "] violates declared ["
                     << opts.c1 << ", " << opts.c2 << "]";
                rep.notes.push_back(note.str());
            }
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

std::pair<double, double> pressure_commutator_check(const ScalarField& rho,
                                                    const PressureLaw& law, double eps) {
    const Grid& grid = rho.grid();
    const double rho_min = field_min(rho);
    if (rho_min <= 0.0) {
        std::ostringstream msg;
        msg << "pressure_commutator_check: nonpositive density, min rho = " << rho_min;
        throw std::domain_error(msg.str());
    }
    const double c1 = rho_min;
    const double c2 = field_max(rho);
    const double C = law.commutator_constant(c1, c2);

    MollifierKernel kernel(grid, eps);
    const ScalarField rp = to_physical(rho);
    const ScalarField rho_m = to_physical(mollify(to_spectral(rp), kernel));
    auto rv = rp.values();
    auto rmv = rho_m.values();

    std::vector<double> pi_rho(grid.size());
    for (std::size_t n = 0; n < grid.size(); ++n) pi_rho[n] = law.pi(rv[n]);
    const ScalarField pi_rho_m =
        to_physical(mollify(to_spectral(ScalarField::from_samples(grid, pi_rho)), kernel));

    // ((rho - rho(x))^2)^e = (rho^2)^e - 2 rho rho^e + rho^2, nodal algebra
    const ScalarField rho_sq_m = to_physical(
        mollify(to_spectral(multiply_nodal(rp, rp)), kernel));

    std::vector<double> lhs_vals(grid.size()), rhs_vals(grid.size());
    auto pim = pi_rho_m.values();
    auto rsm = rho_sq_m.values();
    for (std::size_t n = 0; n < grid.size(); ++n) {
        lhs_vals[n] = law.pi(rmv[n]) - pim[n];
        const double d1 = rmv[n] - rv[n];
        const double var = rsm[n] - 2.0 * rv[n] * rmv[n] + rv[n] * rv[n];
        rhs_vals[n] = C * d1 * d1 + C * var;
    }
    const double lhs = lp_norm(ScalarField::from_samples(grid, std::move(lhs_vals)), 1.5);
    const double rhs = lp_norm(ScalarField::from_samples(grid, std::move(rhs_vals)), 1.5);
    return {lhs, rhs};
}

DefectReport pressure_commutator_scan(const ScalarField& rho, const PressureLaw& law,
                                      const std::vector<double>& scales) {
    ScaleScan scan = run_scan(
        scales,
        [&](double eps) { return pressure_commutator_check(rho, law, eps).first; },
        0.0);
    return make_report(DefectTerm::PressureCommutator, std::move(scan));
}

double sqg_helicity(const ScalarField& theta, int axis) {
    if (theta.grid().dim() != 2)
        throw std::invalid_argument("sqg_helicity: defined on 2D grids only");
    if (axis < 0 || axis > 1) throw std::invalid_argument("sqg_helicity: axis must be 0 or 1");
    return inner_product(theta, derivative(theta, axis));
}

SqgDefectResult sqg_defect_terms(const ScalarField& theta, double eps, int axis) {
    const Grid& grid = theta.grid();
    if (grid.dim() != 2) throw std::invalid_argument("sqg_defect_terms: needs d=2");
    if (axis < 0 || axis > 1) throw std::invalid_argument("sqg_defect_terms: axis must be 0 or 1");

    SqgDefectResult result;
    ScalarField ts = to_spectral(theta);
    if (std::abs(ts.coeffs()[0].real()) > 1e-14 || std::abs(ts.coeffs()[0].imag()) > 1e-14) {
        ts.coeffs()[0] = 0.0;  // Riesz transform excludes the mean
        result.mean_subtracted = true;
    }

    MollifierKernel kernel(grid, eps);
    const VectorField v = sqg_velocity(ts);
    const ScalarField theta_m = mollify(ts, kernel);
    const int i = axis;

    double term_I = 0.0, term_II = 0.0, term_III = 0.0;
    for (int j = 0; j < 2; ++j) {
        const ScalarField dj_theta_m = derivative(theta_m, j);
        // I: commutator of (d_i v_j, theta) against d_j theta^e
        ScalarField c1 = cet_commutator(derivative(v[j], i), ts, kernel).scalar();
        term_I += inner_product(c1, dj_theta_m);
        // II: commutator of (v_j, d_i theta) against d_j theta^e
        ScalarField c2 = cet_commutator(v[j], derivative(ts, i), kernel).scalar();
        term_II += inner_product(c2, dj_theta_m);
        // III: commutator of (v_j, theta) against d_i d_j theta^e
        ScalarField c3 = cet_commutator(v[j], ts, kernel).scalar();
        term_III += inner_product(c3, derivative(dj_theta_m, i));
    }
    result.terms[DefectTerm::SQG_I] = term_I;
    result.terms[DefectTerm::SQG_II] = term_II;
    result.terms[DefectTerm::SQG_III] = term_III;
    return result;
}

std::vector<DefectReport> sqg_defect_scan(const ScalarField& theta,
                                          const std::vector<double>& scales, int axis) {
    std::map<DefectTerm, std::vector<double>> values;
    bool mean_subtracted = false;
    for (double eps : scales) {
        SqgDefectResult r = sqg_defect_terms(theta, eps, axis);
        mean_subtracted |= r.mean_subtracted;
        for (const auto& [term, val] : r.terms) values[term].push_back(std::abs(val));
    }
    std::vector<DefectReport> reports;
    for (const auto& [term, vals] : values) {
        ScaleScan scan;
        scan.scales = scales;
        scan.values = vals;
        scan.compensation_exponent = 0.0;
        scan.fit = fit_power_law(scan.scales, scan.values);
        scan.trend = classify_scale_trend(scan.scales, scan.values, 0.0);
        DefectReport rep = make_report(term, std::move(scan));
        if (mean_subtracted) rep.notes.push_back("theta mean subtracted before analysis");
        reports.push_back(std::move(rep));
    }
    return reports;
}

}  // namespace helidiag
