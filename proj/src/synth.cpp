#include "helidiag/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "helidiag/littlewood_paley.hpp"
#include "helidiag/spectral.hpp"
#include "helidiag/synth_rng.hpp"

namespace helidiag {

std::uint64_t fnv1a(const char* text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char* c = text; *c; ++c) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(*c));
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t seed_mix(std::uint64_t v) { return SplitMix64(v).next(); }

double BesovFieldSpec::target_compensated(int j) const {
    if (variant == BesovVariant::infinity_type) return 1.0;
    if (cN_decay) return cN_decay(j);
    return 1.0 / (1.0 + j);
}

namespace {

// Disjoint dyadic rings: ring j holds integer frequencies with
// 0.75 * 2^j < |xi| <= 1.5 * 2^j, partitioning |xi| >= 1.
int ring_of(double radius) {
    if (radius < 0.9) return -1;
    int j = 0;
    while (radius > 1.5 * std::pow(2.0, j)) ++j;
    return j;
}

struct RingContent {
    // per-mode location (flat index of +xi and -xi) for each ring
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs;
};

// Enumerate Hermitian mode pairs per ring in a fixed order. Only modes with a
// positive leading nonzero wavenumber are listed; the conjugate partner is
// stored alongside. Nyquist rows never appear (rings stop below Nyquist).
RingContent enumerate_rings(const Grid& grid, int j_lo, int j_hi) {
    RingContent rc;
    rc.pairs.resize(static_cast<std::size_t>(j_hi + 1));
    const int d = grid.dim();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto idx = grid.unflatten(i);
        int k[3] = {0, 0, 0};
        bool has_nyquist = false;
        double r2 = 0.0;
        for (int a = 0; a < d; ++a) {
            if (idx[a] == grid.nyquist()) has_nyquist = true;
            k[a] = grid.wavenumber(idx[a]);
            r2 += static_cast<double>(k[a]) * k[a];
        }
        if (has_nyquist) continue;
        int lead = 0;
        for (int a = 0; a < d; ++a) {
            if (k[a] != 0) { lead = k[a]; break; }
        }
        if (lead <= 0) continue;  // the conjugate partner handles this mode
        int j = ring_of(std::sqrt(r2));
        if (j < j_lo || j > j_hi) continue;
        std::array<int, 3> conj{0, 0, 0};
        for (int a = 0; a < d; ++a) conj[a] = k[a] > 0 ? grid.n() - k[a] : -k[a];
        rc.pairs[static_cast<std::size_t>(j)].emplace_back(i, grid.flatten(conj));
    }
    return rc;
}

int default_j_hi(const Grid& grid, int requested) {
    DyadicPartition part(grid);
    if (requested < 0) return part.j_max();
    if (requested > part.j_max())
        throw std::out_of_range("BesovFieldSpec: j_hi=" + std::to_string(requested) +
                                " beyond representable j_max=" + std::to_string(part.j_max()));
    return requested;
}

// Measure compensated block norms and rescale each ring toward its target.
// Blocks overlap adjacent rings, so a few fixed-point sweeps are used.
template <class FieldT, class MakeField, class Rescale>
void calibrate(const Grid& grid, const BesovFieldSpec& spec, int j_hi, double alpha,
               MakeField&& make_field, Rescale&& rescale) {
    constexpr int kSweeps = 4;
    for (int sweep = 0; sweep < kSweeps; ++sweep) {
        FieldT f = make_field();
        BesovProfile prof = cN_profile(f, alpha, spec.p);
        for (int j = spec.j_lo; j <= j_hi; ++j) {
            double measured = prof.compensated[static_cast<std::size_t>(j)];
            double target = spec.target_compensated(j);
            if (measured > 0.0) rescale(j, target / measured);
        }
    }
}

}  // namespace

ScalarField random_besov_field(const Grid& grid, const BesovFieldSpec& spec) {
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
        throw std::invalid_argument("random_besov_field: alpha must be in (0,1)");
    const int j_hi = default_j_hi(grid, spec.j_hi);
    if (spec.j_lo < 0 || spec.j_lo > j_hi)
        throw std::out_of_range("random_besov_field: empty shell range");

    RingContent rings = enumerate_rings(grid, spec.j_lo, j_hi);
    // random phases, one stream per ring so shells are independent
    std::vector<std::vector<double>> phases(rings.pairs.size());
    for (int j = spec.j_lo; j <= j_hi; ++j) {
        SplitMix64 rng(seed_mix(spec.seed ^ fnv1a("ring") ^ static_cast<std::uint64_t>(j)));
        auto& ph = phases[static_cast<std::size_t>(j)];
        ph.resize(rings.pairs[static_cast<std::size_t>(j)].size());
        for (auto& v : ph) v = kTwoPi * rng.uniform();
    }
    std::vector<double> amplitude(static_cast<std::size_t>(j_hi + 1), 1.0);

    auto build = [&]() {
        std::vector<std::complex<double>> coeffs(grid.size(), {0.0, 0.0});
        for (int j = spec.j_lo; j <= j_hi; ++j) {
            const auto& pairs = rings.pairs[static_cast<std::size_t>(j)];
            const auto& ph = phases[static_cast<std::size_t>(j)];
            const double a = amplitude[static_cast<std::size_t>(j)];
            for (std::size_t m = 0; m < pairs.size(); ++m) {
                std::complex<double> c = a * std::polar(1.0, ph[m]);
                coeffs[pairs[m].first] = c;
                coeffs[pairs[m].second] = std::conj(c);
            }
        }
        return ScalarField::from_spectrum(grid, std::move(coeffs));
    };

    calibrate<ScalarField>(grid, spec, j_hi, spec.alpha, build,
                           [&](int j, double factor) {
                               amplitude[static_cast<std::size_t>(j)] *= factor;
                           });
    return build();
}

VectorField random_besov_vector_field(const Grid& grid, const BesovFieldSpec& spec,
                                      bool solenoidal) {
    const int d = grid.dim();
    std::vector<ScalarField> comps;
    comps.reserve(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
        BesovFieldSpec comp_spec = spec;
        comp_spec.seed = seed_mix(spec.seed ^ fnv1a("component") ^ static_cast<std::uint64_t>(a));
        comps.push_back(random_besov_field(grid, comp_spec));
    }
    VectorField v(std::move(comps));
    if (!solenoidal) return v;

    // project, then re-calibrate the vector block norms per shell
    v = leray_project(v);
    const int j_hi = default_j_hi(grid, spec.j_hi);
    DyadicPartition part(grid);
    for (int sweep = 0; sweep < 3; ++sweep) {
        BesovProfile prof = cN_profile(v, spec.alpha, spec.p);
        VectorField adjusted = to_spectral(v);
        for (int j = spec.j_lo; j <= j_hi; ++j) {
            double measured = prof.compensated[static_cast<std::size_t>(j)];
            double target = spec.target_compensated(j);
            if (measured <= 0.0) continue;
            // rescale the disjoint ring content feeding shell j
            double factor = target / measured;
            for (int a = 0; a < d; ++a) {
                auto c = adjusted[a].coeffs();
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    auto idx = grid.unflatten(i);
                    double r2 = 0.0;
                    for (int ax = 0; ax < d; ++ax) {
                        double k = grid.wavenumber(idx[ax]);
                        r2 += k * k;
                    }
                    if (r2 > 0.0 && ring_of(std::sqrt(r2)) == j) c[i] *= factor;
                }
            }
        }
        v = std::move(adjusted);
    }
    return v;
}

ScalarField random_sqg_theta(const Grid& grid, double alpha, double p, BesovVariant variant,
                             std::uint64_t seed) {
    if (grid.dim() != 2) throw std::invalid_argument("random_sqg_theta: needs a 2D grid");
    BesovFieldSpec spec;
    spec.alpha = alpha;
    spec.p = p;
    spec.variant = variant;
    spec.seed = seed;
    return inverse_sqrt_laplacian(random_besov_field(grid, spec));
}

VectorField taylor_green(const Grid& grid) {
    if (grid.dim() != 3) throw std::invalid_argument("taylor_green: needs a 3D grid");
    VectorField v(grid);
    const std::size_t size = grid.size();
    auto vx = v[0].values();
    auto vy = v[1].values();
    for (std::size_t i = 0; i < size; ++i) {
        auto idx = grid.unflatten(i);
        double x = grid.coord(idx[0]), y = grid.coord(idx[1]), z = grid.coord(idx[2]);
        vx[i] = std::sin(x) * std::cos(y) * std::cos(z);
        vy[i] = -std::cos(x) * std::sin(y) * std::cos(z);
    }
    return v;
}

VectorField abc_flow(const Grid& grid, double A, double B, double C) {
    if (grid.dim() != 3) throw std::invalid_argument("abc_flow: needs a 3D grid");
    VectorField v(grid);
    auto vx = v[0].values();
    auto vy = v[1].values();
    auto vz = v[2].values();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto idx = grid.unflatten(i);
        double x = grid.coord(idx[0]), y = grid.coord(idx[1]), z = grid.coord(idx[2]);
        vx[i] = A * std::sin(z) + C * std::cos(y);
        vy[i] = B * std::sin(x) + A * std::cos(z);
        vz[i] = C * std::sin(y) + B * std::cos(x);
    }
    return v;
}

namespace {

CompressibleState with_declared_bounds(ScalarField rho, VectorField v, double amplitude) {
    CompressibleState state{std::move(rho), std::move(v), 1.0 - amplitude, 1.0 + amplitude};
    return state;
}

}  // namespace

CompressibleState manufactured_compressible(const Grid& grid, double amplitude,
                                            std::uint64_t seed) {
    if (!(amplitude >= 0.0 && amplitude < 1.0))
        throw std::invalid_argument("manufactured_compressible: amplitude must be in [0,1)");

    // band-limited random profile normalized to sup <= 1
    ScalarField profile(grid);
    if (amplitude > 0.0) {
        BesovFieldSpec spec;
        spec.alpha = 0.5;
        spec.p = std::numeric_limits<double>::infinity();
        spec.seed = seed_mix(seed ^ fnv1a("density"));
        spec.j_hi = std::min(2, default_j_hi(grid, -1));
        profile = to_physical(random_besov_field(grid, spec));
        double sup = lp_norm(profile, std::numeric_limits<double>::infinity());
        if (sup > 0.0) profile *= 1.0 / sup;
    }
    std::vector<double> rho_vals(grid.size());
    auto pv = profile.values();
    for (std::size_t i = 0; i < grid.size(); ++i) rho_vals[i] = 1.0 + amplitude * pv[i];

    BesovFieldSpec vspec;
    vspec.alpha = 0.5;
    vspec.p = 3.0;
    vspec.seed = seed_mix(seed ^ fnv1a("velocity"));
    vspec.j_hi = std::min(2, default_j_hi(grid, -1));
    VectorField v = grid.dim() == 3 ? random_besov_vector_field(grid, vspec, true)
                                    : random_besov_vector_field(grid, vspec, true);
    return with_declared_bounds(ScalarField::from_samples(grid, std::move(rho_vals)),
                                to_physical(v), amplitude);
}

CompressibleState manufactured_compressible_smooth(const Grid& grid, double amplitude) {
    if (!(amplitude >= 0.0 && amplitude < 1.0))
        throw std::invalid_argument("manufactured_compressible_smooth: amplitude must be in [0,1)");
    if (grid.dim() != 3)
        throw std::invalid_argument("manufactured_compressible_smooth: needs a 3D grid");
    std::vector<double> rho_vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto idx = grid.unflatten(i);
        double x = grid.coord(idx[0]), y = grid.coord(idx[1]), z = grid.coord(idx[2]);
        rho_vals[i] = 1.0 + amplitude * std::sin(x) * std::sin(y) * std::sin(z);
    }
    return with_declared_bounds(ScalarField::from_samples(grid, std::move(rho_vals)),
                                abc_flow(grid, 1.0, 1.0, 1.0), amplitude);
}

}  // namespace helidiag
