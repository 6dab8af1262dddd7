// Helicity, energy, and the defect terms whose eps-decay encodes the
// conservation mechanism: the incompressible helicity flux, the compressible
// terms I1-I4 with the pressure commutator bound, and the SQG terms I-III.
#pragma once

#include <map>
#include <optional>
#include <string>

#include "helidiag/field.hpp"
#include "helidiag/mollify.hpp"
#include "helidiag/scale_scan.hpp"

namespace helidiag {

/// Isentropic pressure pi(rho) = kappa rho^gamma with Pi(rho) =
/// int_1^rho pi'(s)/s ds in closed form.
struct PressureLaw {
    double kappa;
    double gamma;

    PressureLaw(double kappa_, double gamma_);

    double pi(double rho) const;
    double pi_prime(double rho) const;
    double pi_second(double rho) const;
    double Pi(double rho) const;

    /// max |pi''| / 2 over [c1, c2]; the constant in the pressure commutator bound.
    double commutator_constant(double c1, double c2) const;
};

enum class DefectTerm {
    HelicityFlux,
    I1,
    I2,
    I3,
    I4,
    SQG_I,
    SQG_II,
    SQG_III,
    PressureCommutator,
};

std::string to_string(DefectTerm term);

struct DefectReport {
    DefectTerm term_id;
    ScaleScan scan;
    Trend verdict = Trend::insufficient;
    std::vector<std::string> notes;

    std::string to_json() const;
    std::string to_csv() const;
};

/// int curl(v).v dx; defined for d=3 only.
double helicity(const VectorField& v);

/// (1/2) int |v|^2 dx.
double energy(const VectorField& v);

/// int (1/2) rho |v|^2 + kappa rho^gamma/(gamma-1) dx; rho must be positive.
double compressible_energy(const ScalarField& rho, const VectorField& v, const PressureLaw& law);

/// Instantaneous helicity-flux defect 2 int (v^e x v^e - (v x v)^e) : grad w^e.
double helicity_flux_defect(const VectorField& v, double eps);
double helicity_flux_defect(const VectorField& v, const MollifierKernel& kernel);
DefectReport helicity_flux_scan(const VectorField& v, const std::vector<double>& scales,
                                double expected_exponent);

/// Time integral of the instantaneous defect over a trajectory, optionally
/// weighted by a smooth bump in time.
double helicity_flux_time_integral(const VectorSeries& series, double eps, bool weighted);

/// ||curl((v x w)^e) - curl(v^e x w^e)||_{L^{3/2}} with w = curl v.
double vorticity_transport_residual(const VectorField& v, double eps);
DefectReport vorticity_transport_scan(const VectorField& v, const std::vector<double>& scales,
                                      double expected_exponent);

struct CompressibleDefectOptions {
    std::optional<ScalarField> test_function;  // scalar s; phi = s * (1,..,1)
    double c1 = 0.0;                           // declared density bounds; 0 = derive
    double c2 = 0.0;
};

/// |I1|..|I4| at one eps; the I2 time derivative is eliminated through the
/// mollified continuity equation, so a single time slice suffices.
std::map<DefectTerm, double> compressible_defects(const ScalarField& rho, const VectorField& v,
                                                  const PressureLaw& law, double eps,
                                                  const CompressibleDefectOptions& opts = {});

std::vector<DefectReport> compressible_defect_scan(const ScalarField& rho, const VectorField& v,
                                                   const PressureLaw& law,
                                                   const std::vector<double>& scales,
                                                   const CompressibleDefectOptions& opts = {});

/// lhs = ||pi(rho^e) - pi^e(rho)||_{L^{3/2}},
/// rhs = ||C (rho^e-rho)^2 + C ((rho - rho(x))^2)^e||_{L^{3/2}},
/// C = max |pi''|/2 on [c1, c2]. The bound holds pointwise for the discrete
/// mollifier (nonnegative weights of unit mass).
std::pair<double, double> pressure_commutator_check(const ScalarField& rho,
                                                    const PressureLaw& law, double eps);
DefectReport pressure_commutator_scan(const ScalarField& rho, const PressureLaw& law,
                                      const std::vector<double>& scales);

/// int theta d_i theta dx (d=2).
double sqg_helicity(const ScalarField& theta, int axis);

struct SqgDefectResult {
    std::map<DefectTerm, double> terms;
    bool mean_subtracted = false;
};

/// The three commutator integrals of the SQG helicity balance for helicity
/// axis i; theta is mean-subtracted if needed (noted in the result).
SqgDefectResult sqg_defect_terms(const ScalarField& theta, double eps, int axis);

std::vector<DefectReport> sqg_defect_scan(const ScalarField& theta,
                                          const std::vector<double>& scales, int axis);

}  // namespace helidiag
