// helidiag command line: field synthesis, Besov analysis, commutator and
// defect scans, solver runs, and criteria reports.
//
// Exit codes: 0 success, 2 validation error, 3 numerical abort (NaN).
//
// All randomness flows from --seed; each module derives its stream as
// seed_mix(seed ^ fnv1a(module_name)).

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "helidiag/commutator.hpp"
#include "helidiag/conservation.hpp"
#include "helidiag/criteria.hpp"
#include "helidiag/fld_io.hpp"
#include "helidiag/littlewood_paley.hpp"
#include "helidiag/mollify.hpp"
#include "helidiag/solver.hpp"
#include "helidiag/spectral.hpp"
#include "helidiag/synth.hpp"
#include "helidiag/synth_rng.hpp"

namespace fs = std::filesystem;
using namespace helidiag;

namespace {

struct GlobalOptions {
    std::uint64_t seed = 0;
    int workers = 1;
    std::string outdir = ".";
    std::string format = "json";  // csv | json | both
    int verbosity = 0;
};

void write_text_atomic(const fs::path& path, const std::string& text) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << text;
    }
    fs::rename(tmp, path);
}

fs::path out_path(const GlobalOptions& g, const std::string& name) {
    fs::create_directories(g.outdir);
    return fs::path(g.outdir) / name;
}

void emit_scan(const GlobalOptions& g, const std::string& stem, const ScaleScan& scan,
               const std::string& quantity) {
    if (g.format == "csv" || g.format == "both")
        write_text_atomic(out_path(g, stem + ".csv"), scan.to_csv());
    if (g.format == "json" || g.format == "both")
        write_text_atomic(out_path(g, stem + ".json"), scan.to_json(quantity));
    if (g.verbosity > 0)
        std::cout << stem << ": slope=" << scan.fit.slope << " r2=" << scan.fit.r_squared
                  << " verdict=" << to_string(scan.trend) << "\n";
}

std::vector<double> scale_grid(double eps0, double ratio, int count) {
    return geometric_scales(eps0, ratio, count);
}

BesovVariant parse_variant(const std::string& v) {
    if (v == "inf" || v == "infinity") return BesovVariant::infinity_type;
    if (v == "cN" || v == "cn") return BesovVariant::cN_type;
    throw CLI::ValidationError("variant must be inf|cN");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral helicity-conservation diagnostics on the torus"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key-value config file (flags win)");

    GlobalOptions g;
    if (const char* env = std::getenv("HELIDIAG_WORKERS")) g.workers = std::atoi(env);
    if (const char* env = std::getenv("HELIDIAG_OUTDIR")) g.outdir = env;
    app.add_option("--seed", g.seed, "global seed; per-module streams derive from it");
    app.add_option("--workers", g.workers, "worker pool size for scan points");
    app.add_option("--outdir", g.outdir, "output directory");
    app.add_option("--format", g.format, "output format: csv|json|both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    app.add_flag("-v,--verbose", g.verbosity, "print progress");

    // ---- synth
    auto* synth = app.add_subcommand("synth", "generate and save fields (FLD1)");
    struct {
        int grid_n = 64;
        int dim = 2;
        std::string kind = "besov";
        double alpha = 1.0 / 3.0;
        double p = 3.0;
        std::string variant = "inf";
        bool solenoidal = false;
        double abc[3] = {1.0, 1.0, 1.0};
        double amplitude = 0.3;
        std::string out = "field.fld";
    } sy;
    synth->add_option("--grid", sy.grid_n, "points per axis (power of two)");
    synth->add_option("--dim", sy.dim, "dimension (2 or 3)");
    synth->add_option("--kind", sy.kind, "besov|besov-vector|abc|taylor-green|compressible|sqg-theta")
        ->check(CLI::IsMember({"besov", "besov-vector", "abc", "taylor-green", "compressible",
                               "sqg-theta"}));
    synth->add_option("--alpha", sy.alpha, "regularity exponent in (0,1)");
    synth->add_option("--p", sy.p, "calibration integrability");
    synth->add_option("--variant", sy.variant, "inf|cN");
    synth->add_flag("--solenoidal", sy.solenoidal, "Leray-project vector output");
    synth->add_option("--abc-a", sy.abc[0]);
    synth->add_option("--abc-b", sy.abc[1]);
    synth->add_option("--abc-c", sy.abc[2]);
    synth->add_option("--amplitude", sy.amplitude, "density amplitude for compressible");
    synth->add_option("--out", sy.out, "output file name");

    // ---- analyze-besov
    auto* analyze = app.add_subcommand("analyze-besov", "cN profile + finite differences");
    struct {
        std::string field;
        double alpha = 1.0 / 3.0;
        double p = 3.0;
        double eps0 = 0.0;
        double ratio = 0.75;
        int count = 10;
        std::string role = "field";
        std::string stem = "besov";
    } an;
    analyze->add_option("--field", an.field, "FLD1 input")->required();
    analyze->add_option("--alpha", an.alpha);
    analyze->add_option("--p", an.p);
    analyze->add_option("--eps0", an.eps0, "largest difference scale (0: pi/4)");
    analyze->add_option("--eps-ratio", an.ratio);
    analyze->add_option("--eps-count", an.count);
    analyze->add_option("--role", an.role, "velocity|vorticity|density|momentum|grad-theta|field");
    analyze->add_option("--stem", an.stem, "output file stem");

    // ---- commutator-scan
    auto* comm = app.add_subcommand("commutator-scan", "CET commutator scaling");
    struct {
        std::string field_a, field_b;
        int grid_n = 256;
        double alpha = 1.0 / 3.0, beta = 1.0 / 3.0;
        std::string variant = "cN";
        double q = 1.5;
        double eps0 = 0.0, ratio = 0.8;
        int count = 10;
        std::uint64_t seed_a = 1, seed_b = 2;
        std::string stem = "commutator";
    } cs;
    comm->add_option("--field-a", cs.field_a, "FLD1 input (omit for synthetic)");
    comm->add_option("--field-b", cs.field_b, "FLD1 input (omit for synthetic)");
    comm->add_option("--grid", cs.grid_n, "grid for synthetic inputs");
    comm->add_option("--alpha", cs.alpha);
    comm->add_option("--beta", cs.beta);
    comm->add_option("--variant", cs.variant, "inf|cN for synthetic inputs");
    comm->add_option("--q", cs.q, "spatial norm exponent");
    comm->add_option("--eps0", cs.eps0, "largest eps (0: pi/4)");
    comm->add_option("--eps-ratio", cs.ratio);
    comm->add_option("--eps-count", cs.count);
    comm->add_option("--stem", cs.stem);

    // ---- defect-scan
    auto* defect = app.add_subcommand("defect-scan", "conservation defect scans");
    struct {
        std::string system = "euler";
        std::string field;
        std::string rho_file;
        double gamma = 5.0 / 3.0;
        double kappa = 0.0;  // 0: (gamma-1)^2/(4 gamma)
        double eps0 = 0.0, ratio = 0.8;
        int count = 8;
        int axis = 0;
        double expected = 0.0;
        std::string stem = "defect";
    } df;
    defect->add_option("--system", df.system, "euler|ceuler|sqg")
        ->check(CLI::IsMember({"euler", "ceuler", "sqg"}));
    defect->add_option("--field", df.field, "velocity / theta FLD1 input")->required();
    defect->add_option("--rho", df.rho_file, "density FLD1 input (ceuler)");
    defect->add_option("--gamma", df.gamma);
    defect->add_option("--kappa", df.kappa);
    defect->add_option("--eps0", df.eps0);
    defect->add_option("--eps-ratio", df.ratio);
    defect->add_option("--eps-count", df.count);
    defect->add_option("--axis", df.axis, "SQG helicity axis (0 or 1)");
    defect->add_option("--expected", df.expected, "compensation exponent for the scan");
    defect->add_option("--stem", df.stem);

    // ---- run-solver
    auto* solver = app.add_subcommand("run-solver", "euler3d / sqg2d integration");
    struct {
        std::string system = "euler3d";
        std::string init = "taylor-green";
        std::string init_file;
        int grid_n = 32;
        double dt = 1e-3;
        double t_end = 0.5;
        int record_every = 10;
        std::string stem = "run";
    } rs;
    solver->add_option("--system", rs.system)->check(CLI::IsMember({"euler3d", "sqg2d"}));
    solver->add_option("--init", rs.init, "taylor-green|abc|cos|file");
    solver->add_option("--init-file", rs.init_file, "FLD1 initial data when --init file");
    solver->add_option("--grid", rs.grid_n);
    solver->add_option("--dt", rs.dt);
    solver->add_option("--t-end", rs.t_end);
    solver->add_option("--record-every", rs.record_every);
    solver->add_option("--stem", rs.stem);

    // ---- helicity
    auto* hel = app.add_subcommand("helicity", "helicity of a velocity field");
    std::string hel_field;
    hel->add_option("--field", hel_field, "FLD1 velocity input")->required();

    // ---- report
    auto* report = app.add_subcommand("report", "merge scan outputs, evaluate criteria");
    struct {
        std::string dir = ".";
        std::string out = "report";
    } rp;
    report->add_option("--dir", rp.dir, "directory of analyze-besov/defect outputs");
    report->add_option("--out", rp.out, "output stem");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (synth->parsed()) {
            Grid grid(sy.dim, sy.grid_n);
            const std::uint64_t seed = seed_mix(g.seed ^ fnv1a("synth"));
            if (sy.kind == "besov" || sy.kind == "besov-vector") {
                BesovFieldSpec spec;
                spec.alpha = sy.alpha;
                spec.p = sy.p;
                spec.variant = parse_variant(sy.variant);
                spec.seed = seed;
                if (sy.kind == "besov")
                    write_fld(out_path(g, sy.out).string(), random_besov_field(grid, spec));
                else
                    write_fld(out_path(g, sy.out).string(),
                              random_besov_vector_field(grid, spec, sy.solenoidal));
            } else if (sy.kind == "abc") {
                write_fld(out_path(g, sy.out).string(),
                          abc_flow(grid, sy.abc[0], sy.abc[1], sy.abc[2]));
            } else if (sy.kind == "taylor-green") {
                write_fld(out_path(g, sy.out).string(), taylor_green(grid));
            } else if (sy.kind == "sqg-theta") {
                write_fld(out_path(g, sy.out).string(),
                          random_sqg_theta(grid, sy.alpha, sy.p, parse_variant(sy.variant), seed));
            } else {
                CompressibleState state = manufactured_compressible(grid, sy.amplitude, seed);
                write_fld(out_path(g, "rho_" + sy.out).string(), state.rho);
                write_fld(out_path(g, "vel_" + sy.out).string(), state.velocity);
            }
            return 0;
        }

        if (analyze->parsed()) {
            FldContents contents = read_fld(an.field);
            ScalarField f = contents.components == 1
                                ? contents.scalar()
                                : to_physical(contents.vector())[0];
            // profile on the scalar; vector inputs use the magnitude-bearing profile
            BesovProfile prof = contents.components == 1
                                    ? cN_profile(f, an.alpha, an.p)
                                    : cN_profile(contents.vector(), an.alpha, an.p);
            double eps0 = an.eps0 > 0 ? an.eps0 : M_PI / 4.0;
            ScaleScan fd = finite_difference_modulus(
                contents.components == 1 ? f : contents.vector()[0], an.alpha, an.p,
                scale_grid(eps0, an.ratio, an.count));
            nlohmann::json meta;
            meta["schema_version"] = 1;
            meta["role"] = an.role;
            meta["alpha"] = an.alpha;
            meta["p"] = an.p;
            meta["time_exponent"] = an.p;  // static field: reported at the spatial exponent
            meta["profile"] = nlohmann::json::parse(prof.to_json());
            meta["finite_difference"] = nlohmann::json::parse(fd.to_json("fd_modulus"));
            if (g.format == "csv" || g.format == "both") {
                write_text_atomic(out_path(g, an.stem + "_profile.csv"), prof.to_csv());
                write_text_atomic(out_path(g, an.stem + "_fd.csv"), fd.to_csv());
            }
            if (g.format == "json" || g.format == "both")
                write_text_atomic(out_path(g, an.stem + "_besov.json"), meta.dump(2));
            if (g.verbosity > 0)
                std::cout << "verdict=" << to_string(prof.verdict)
                          << " sup_compensated=" << prof.sup_compensated() << "\n";
            return 0;
        }

        if (comm->parsed()) {
            ScalarField a(Grid(2, 8)), b(Grid(2, 8));
            if (!cs.field_a.empty()) {
                a = read_fld(cs.field_a).scalar();
                b = read_fld(cs.field_b).scalar();
            } else {
                Grid grid(2, cs.grid_n);
                BesovFieldSpec sa, sb;
                sa.alpha = cs.alpha;
                sb.alpha = cs.beta;
                sa.variant = sb.variant = parse_variant(cs.variant);
                sa.seed = seed_mix(g.seed ^ fnv1a("commutator-a"));
                sb.seed = seed_mix(g.seed ^ fnv1a("commutator-b"));
                a = random_besov_field(grid, sa);
                b = random_besov_field(grid, sb);
            }
            double eps0 = cs.eps0 > 0 ? cs.eps0 : M_PI / 4.0;
            ScaleScan scan = commutator_scaling_scan(a, b, scale_grid(eps0, cs.ratio, cs.count),
                                                     cs.q, cs.alpha + cs.beta);
            emit_scan(g, cs.stem, scan, "cet_commutator");
            return 0;
        }

        if (defect->parsed()) {
            double eps0 = df.eps0;
            std::vector<DefectReport> reports;
            if (df.system == "euler") {
                VectorField v = read_fld(df.field).vector();
                if (eps0 <= 0) eps0 = M_PI / 4.0;
                reports.push_back(
                    helicity_flux_scan(v, scale_grid(eps0, df.ratio, df.count), df.expected));
                reports.push_back(vorticity_transport_scan(
                    v, scale_grid(eps0, df.ratio, df.count), df.expected));
                reports.back().notes.push_back("vorticity transport residual");
            } else if (df.system == "ceuler") {
                if (df.rho_file.empty())
                    throw CLI::ValidationError("--rho is required for --system ceuler");
                ScalarField rho = read_fld(df.rho_file).scalar();
                VectorField v = read_fld(df.field).vector();
                double kappa = df.kappa > 0 ? df.kappa
                                            : (df.gamma - 1.0) * (df.gamma - 1.0) / (4.0 * df.gamma);
                PressureLaw law(kappa, df.gamma);
                if (eps0 <= 0) eps0 = M_PI / 4.0;
                reports = compressible_defect_scan(rho, v, law,
                                                   scale_grid(eps0, df.ratio, df.count), {});
                reports.push_back(
                    pressure_commutator_scan(rho, law, scale_grid(eps0, df.ratio, df.count)));
            } else {
                ScalarField theta = read_fld(df.field).scalar();
                if (eps0 <= 0) eps0 = M_PI / 4.0;
                reports = sqg_defect_scan(theta, scale_grid(eps0, df.ratio, df.count), df.axis);
            }
            nlohmann::json all = nlohmann::json::array();
            for (const auto& r : reports) {
                all.push_back(nlohmann::json::parse(r.to_json()));
                if (g.format == "csv" || g.format == "both")
                    write_text_atomic(
                        out_path(g, df.stem + "_" + to_string(r.term_id) + ".csv"), r.to_csv());
            }
            nlohmann::json top;
            top["schema_version"] = 1;
            top["system"] = df.system;
            top["reports"] = all;
            if (g.format == "json" || g.format == "both")
                write_text_atomic(out_path(g, df.stem + ".json"), top.dump(2));
            if (g.verbosity > 0)
                for (const auto& r : reports)
                    std::cout << to_string(r.term_id) << ": slope=" << r.scan.fit.slope
                              << " verdict=" << to_string(r.verdict) << "\n";
            return 0;
        }

        if (solver->parsed()) {
            SolverConfig cfg;
            cfg.dt = rs.dt;
            cfg.t_end = rs.t_end;
            cfg.record_every = rs.record_every;
            std::vector<std::string> snapshot_paths;
            if (rs.system == "euler3d") {
                cfg.system = SolverSystem::euler3d;
                Grid grid(3, rs.grid_n);
                VectorField v0(grid);
                if (rs.init == "taylor-green")
                    v0 = taylor_green(grid);
                else if (rs.init == "abc")
                    v0 = abc_flow(grid, 1.0, 1.0, 1.0);
                else if (rs.init == "file")
                    v0 = read_fld(rs.init_file).vector();
                else
                    throw CLI::ValidationError("unknown --init for euler3d");
                VectorSeries traj;
                SolverResult result = euler3d_integrate(v0, cfg, &traj);
                for (std::size_t k = 0; k < traj.size(); ++k) {
                    std::string name = rs.stem + "_" + std::to_string(k) + ".fld";
                    write_fld(out_path(g, name).string(), traj.snapshots[k]);
                    snapshot_paths.push_back(name);
                }
                write_text_atomic(out_path(g, rs.stem + "_manifest.json"),
                                  result.to_manifest_json(cfg, snapshot_paths));
            } else {
                cfg.system = SolverSystem::sqg2d;
                Grid grid(2, rs.grid_n);
                ScalarField theta0(grid);
                if (rs.init == "cos") {
                    std::vector<double> vals(grid.size());
                    for (std::size_t i = 0; i < grid.size(); ++i)
                        vals[i] = std::cos(grid.coord(grid.unflatten(i)[0]));
                    theta0 = ScalarField::from_samples(grid, std::move(vals));
                } else if (rs.init == "file") {
                    theta0 = read_fld(rs.init_file).scalar();
                } else {
                    throw CLI::ValidationError("unknown --init for sqg2d (use cos|file)");
                }
                ScalarSeries traj;
                SolverResult result = sqg2d_integrate(theta0, cfg, &traj);
                for (std::size_t k = 0; k < traj.size(); ++k) {
                    std::string name = rs.stem + "_" + std::to_string(k) + ".fld";
                    write_fld(out_path(g, name).string(), traj.snapshots[k]);
                    snapshot_paths.push_back(name);
                }
                write_text_atomic(out_path(g, rs.stem + "_manifest.json"),
                                  result.to_manifest_json(cfg, snapshot_paths));
            }
            return 0;
        }

        if (hel->parsed()) {
            VectorField v = read_fld(hel_field).vector();
            std::cout.precision(17);
            std::cout << helicity(v) << "\n";
            return 0;
        }

        if (report->parsed()) {
            RegularitySummary summary;
            summary.density_bounded = false;
            for (const auto& entry : fs::directory_iterator(rp.dir)) {
                if (entry.path().extension() != ".json") continue;
                std::ifstream in(entry.path());
                nlohmann::json j;
                try {
                    in >> j;
                } catch (...) {
                    continue;  // not one of ours
                }
                if (!j.contains("role") || !j.contains("profile")) continue;
                BesovMeasurement m;
                m.exponent = j.value("alpha", 0.0);
                m.integrability = j.value("p", 0.0);
                m.time_exponent = j.value("time_exponent", m.integrability);
                std::string verdict = j["profile"].value("verdict", "insufficient shells");
                m.trend = verdict == "decaying"  ? Trend::decaying
                          : verdict == "flat"    ? Trend::flat
                          : verdict == "growing" ? Trend::growing
                                                 : Trend::insufficient;
                std::string role = j["role"];
                if (role == "velocity") summary.velocity = m;
                else if (role == "vorticity") summary.vorticity = m;
                else if (role == "density") summary.density = m;
                else if (role == "momentum") summary.momentum = m;
                else if (role == "grad-theta") summary.sqg_grad_theta = m;
            }
            auto clauses = evaluate_criteria(summary);
            std::string text = render_report_text(clauses);
            std::cout << text;
            write_text_atomic(out_path(g, rp.out + ".txt"), text);
            write_text_atomic(out_path(g, rp.out + ".json"), render_report_json(clauses));
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericAbort& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
