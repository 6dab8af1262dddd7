// Hypothesis arithmetic: maps measured regularity summaries onto the
// conservation-theorem clauses and reports the arithmetic. A reporting layer
// only; no claim of proof.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "helidiag/scale_scan.hpp"

namespace helidiag {

/// A measured Besov-type regularity: exponent, integrability, the time
/// exponent of the composite norm, and the compensated-profile trend
/// (decaying reads as c(N)-consistent, flat as the infinity class).
struct BesovMeasurement {
    double exponent = 0.0;
    double integrability = 0.0;
    double time_exponent = 0.0;
    Trend trend = Trend::flat;
};

/// Membership in a composite Lebesgue class L^{time}(0,T;L^{space}).
struct LebesgueMembership {
    double time_exponent = 0.0;
    double space_exponent = 0.0;
};

struct RegularitySummary {
    int dim = 3;
    std::optional<BesovMeasurement> velocity;
    std::optional<BesovMeasurement> vorticity;
    std::optional<BesovMeasurement> density;
    std::optional<BesovMeasurement> momentum;
    std::vector<LebesgueMembership> velocity_lp;
    std::vector<LebesgueMembership> vorticity_lp;
    std::vector<LebesgueMembership> div_velocity_lp;
    std::vector<LebesgueMembership> curl_vorticity_lp;
    std::optional<BesovMeasurement> sqg_grad_theta;
    bool density_bounded = false;   // 0 < c1 <= rho <= c2
    bool pressure_c2 = false;       // pi in C^2[c1,c2]

    bool empty() const;
};

enum class ClauseVerdict { satisfied, not_satisfied, indeterminate };

std::string to_string(ClauseVerdict v);

struct ClauseReport {
    std::string clause_id;    // e.g. "incompressible.1"
    ClauseVerdict verdict;
    std::string arithmetic;   // the numbers that were checked
};

/// Evaluate every theorem clause against the summary.
std::vector<ClauseReport> evaluate_criteria(const RegularitySummary& summary);

std::string render_report_text(const std::vector<ClauseReport>& reports);
std::string render_report_json(const std::vector<ClauseReport>& reports);

}  // namespace helidiag
