#include "helidiag/solver.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "helidiag/conservation.hpp"
#include "helidiag/spectral.hpp"

namespace helidiag {

namespace {

int dealias_cutoff(const Grid& g) { return (g.n() - 1) / 3; }  // 3K < N strictly

bool all_finite(const std::vector<std::complex<double>>& c) {
    for (const auto& z : c)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

bool all_finite(const VectorField& v) {
    for (int a = 0; a < v.dim(); ++a) {
        auto c = v[a].coeffs();
        if (!all_finite(std::vector<std::complex<double>>(c.begin(), c.end()))) return false;
    }
    return true;
}

double max_speed(const VectorField& v) {
    return lp_norm(v, std::numeric_limits<double>::infinity());
}

}  // namespace

ScalarField dealias_23(const ScalarField& f) {
    const Grid& g = f.grid();
    const int cutoff = dealias_cutoff(g);
    ScalarField fs = to_spectral(f);
    auto c = fs.coeffs();
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto idx = g.unflatten(i);
        for (int a = 0; a < g.dim(); ++a) {
            if (std::abs(g.wavenumber(idx[a])) > cutoff) {
                c[i] = 0.0;
                break;
            }
        }
    }
    return fs;
}

VectorField dealias_23(const VectorField& v) {
    std::vector<ScalarField> comps;
    for (int a = 0; a < v.dim(); ++a) comps.push_back(dealias_23(v[a]));
    return VectorField(std::move(comps));
}

std::string SolverResult::to_manifest_json(const SolverConfig& cfg,
                                           const std::vector<std::string>& snapshot_paths) const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["system"] = cfg.system == SolverSystem::euler3d ? "euler3d" : "sqg2d";
    j["dt"] = cfg.dt;
    j["t_end"] = cfg.t_end;
    j["record_every"] = cfg.record_every;
    j["cfl_advisory"] = cfl_advisory;
    auto& entries = j["log"] = nlohmann::json::array();
    for (const auto& s : log) {
        nlohmann::json e{{"t", s.t}, {"energy", s.energy}};
        if (cfg.system == SolverSystem::euler3d) {
            e["helicity"] = s.helicity;
            e["max_div"] = s.divergence;
        } else {
            e["hamiltonian"] = s.hamiltonian;
            e["general_helicity"] = {s.general_helicity_x, s.general_helicity_y};
        }
        entries.push_back(std::move(e));
    }
    if (!snapshot_paths.empty()) j["snapshots"] = snapshot_paths;
    return j.dump(2);
}

namespace {

// -P[(v.grad) v], dealiased
VectorField euler_rhs(const VectorField& v) {
    const Grid& g = v.grid();
    VectorField vp = to_physical(v);
    std::vector<ScalarField> adv;
    for (int i = 0; i < 3; ++i) {
        std::vector<double> acc(g.size(), 0.0);
        for (int j = 0; j < 3; ++j) {
            auto dj = to_physical(derivative(v[i], j)).values();
            auto vj = vp[j].values();
            for (std::size_t n = 0; n < g.size(); ++n) acc[n] += vj[n] * dj[n];
        }
        adv.push_back(ScalarField::from_samples(g, std::move(acc)));
    }
    VectorField rhs = leray_project(dealias_23(VectorField(std::move(adv))));
    rhs *= -1.0;
    return rhs;
}

// -div(v theta) with v from the Riesz multipliers, dealiased
ScalarField sqg_rhs(const ScalarField& theta) {
    const Grid& g = theta.grid();
    VectorField v = to_physical(sqg_velocity(theta));
    ScalarField tp = to_physical(theta);
    ScalarField out(g, Representation::spectral);
    for (int j = 0; j < 2; ++j) {
        ScalarField flux = dealias_23(multiply_nodal(v[j], tp));
        out -= derivative(flux, j);
    }
    return out;
}

ConservationSample euler_sample(double t, const VectorField& v) {
    ConservationSample s;
    s.t = t;
    s.energy = energy(v);
    s.helicity = helicity(v);
    s.divergence = lp_norm(divergence(v), std::numeric_limits<double>::infinity());
    return s;
}

ConservationSample sqg_sample(double t, const ScalarField& theta) {
    ConservationSample s;
    s.t = t;
    s.energy = lp_norm(theta, 2.0);
    s.hamiltonian = 0.5 * inner_product(theta, inverse_sqrt_laplacian(theta));
    s.general_helicity_x = sqg_helicity(theta, 0);
    s.general_helicity_y = sqg_helicity(theta, 1);
    return s;
}

}  // namespace

SolverResult euler3d_integrate(const VectorField& v0, const SolverConfig& cfg,
                               VectorSeries* trajectory) {
    if (v0.dim() != 3) throw std::invalid_argument("euler3d_integrate: needs d=3");
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("euler3d_integrate: dt must be positive");
    const double div0 = lp_norm(divergence(v0), std::numeric_limits<double>::infinity());
    if (div0 > 1e-10)
        throw std::invalid_argument("euler3d_integrate: initial divergence " +
                                    std::to_string(div0) + " exceeds 1e-10");

    VectorField v = dealias_23(to_spectral(v0));
    SolverResult result;
    result.cfl_advisory = max_speed(v) * cfg.dt / v.grid().spacing();

    const int steps = static_cast<int>(std::round(cfg.t_end / cfg.dt));
    result.log.push_back(euler_sample(0.0, v));
    if (trajectory) trajectory->push(0.0, to_physical(v));

    for (int step = 1; step <= steps; ++step) {
        VectorField k1 = euler_rhs(v);
        VectorField k2 = euler_rhs(v + (0.5 * cfg.dt) * k1);
        VectorField k3 = euler_rhs(v + (0.5 * cfg.dt) * k2);
        VectorField k4 = euler_rhs(v + cfg.dt * k3);
        k1 += 2.0 * k2;
        k1 += 2.0 * k3;
        k1 += k4;
        v += (cfg.dt / 6.0) * k1;
        if (!all_finite(v)) throw NumericAbort((step - 1) * cfg.dt, step - 1);
        const double t = step * cfg.dt;
        if (step % cfg.record_every == 0 || step == steps) {
            result.log.push_back(euler_sample(t, v));
            if (trajectory) trajectory->push(t, to_physical(v));
        }
    }
    return result;
}

SolverResult sqg2d_integrate(const ScalarField& theta0, const SolverConfig& cfg,
                             ScalarSeries* trajectory) {
    if (theta0.grid().dim() != 2) throw std::invalid_argument("sqg2d_integrate: needs d=2");
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("sqg2d_integrate: dt must be positive");
    ScalarField theta = dealias_23(to_spectral(theta0));
    {
        auto c = theta.coeffs();
        if (std::abs(c[0]) > 1e-12)
            throw std::invalid_argument("sqg2d_integrate: theta0 must be mean-zero");
        c[0] = 0.0;
    }

    SolverResult result;
    result.cfl_advisory =
        max_speed(sqg_velocity(theta)) * cfg.dt / theta.grid().spacing();

    const int steps = static_cast<int>(std::round(cfg.t_end / cfg.dt));
    result.log.push_back(sqg_sample(0.0, theta));
    if (trajectory) trajectory->push(0.0, to_physical(theta));

    for (int step = 1; step <= steps; ++step) {
        ScalarField k1 = sqg_rhs(theta);
        ScalarField k2 = sqg_rhs(theta + (0.5 * cfg.dt) * k1);
        ScalarField k3 = sqg_rhs(theta + (0.5 * cfg.dt) * k2);
        ScalarField k4 = sqg_rhs(theta + cfg.dt * k3);
        k1 += 2.0 * k2;
        k1 += 2.0 * k3;
        k1 += k4;
        theta += (cfg.dt / 6.0) * k1;
        auto c = theta.coeffs();
        bool finite = true;
        for (const auto& z : c)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) { finite = false; break; }
        if (!finite) throw NumericAbort((step - 1) * cfg.dt, step - 1);
        const double t = step * cfg.dt;
        if (step % cfg.record_every == 0 || step == steps) {
            result.log.push_back(sqg_sample(t, theta));
            if (trajectory) trajectory->push(t, to_physical(theta));
        }
    }
    return result;
}

}  // namespace helidiag
