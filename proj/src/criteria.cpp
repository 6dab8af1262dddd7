#include "helidiag/criteria.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace helidiag {

namespace {

constexpr double kTol = 1e-9;

bool close(double a, double b) { return std::abs(a - b) <= kTol * std::max(1.0, std::abs(b)); }
bool at_least(double a, double b) { return a >= b - kTol; }

// decaying compensated profile reads as c(N)-consistent; flat stays in the
// infinity class; growing fails even the infinity class at that exponent
bool trend_ok_for_cN(Trend t) { return t == Trend::decaying; }
bool trend_ok_for_inf(Trend t) { return t == Trend::decaying || t == Trend::flat; }

std::string fmt(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

struct ClauseBuilder {
    std::vector<ClauseReport>& out;

    void add(const std::string& id, ClauseVerdict v, const std::string& arithmetic) {
        out.push_back({id, v, arithmetic});
    }
    void indeterminate(const std::string& id, const std::string& why) {
        add(id, ClauseVerdict::indeterminate, why);
    }
};

bool has_membership(const std::vector<LebesgueMembership>& list, double time_exp,
                    double space_exp) {
    for (const auto& m : list)
        if (at_least(m.time_exponent, time_exp) && at_least(m.space_exponent, space_exp))
            return true;  // inclusion on the finite-measure torus/time interval
    return false;
}

// Besov clause with pinned exponent/integrability/time exponent.
ClauseVerdict besov_clause(const std::optional<BesovMeasurement>& m, double exponent,
                           double integrability, double time_exponent, bool need_cN,
                           std::string& arithmetic) {
    if (!m) {
        arithmetic = "no measurement";
        return ClauseVerdict::indeterminate;
    }
    std::ostringstream a;
    a << "measured (alpha=" << m->exponent << ", p=" << m->integrability
      << ", k=" << m->time_exponent << ", trend=" << to_string(m->trend) << ") vs required ("
      << exponent << ", " << integrability << ", " << time_exponent << ", "
      << (need_cN ? "c(N)" : "inf") << ")";
    arithmetic = a.str();
    if (m->trend == Trend::insufficient) return ClauseVerdict::indeterminate;
    const bool exponents_match = close(m->exponent, exponent) &&
                                 close(m->integrability, integrability) &&
                                 at_least(m->time_exponent, time_exponent);
    const bool trend_ok = need_cN ? trend_ok_for_cN(m->trend) : trend_ok_for_inf(m->trend);
    return exponents_match && trend_ok ? ClauseVerdict::satisfied : ClauseVerdict::not_satisfied;
}

}  // namespace

bool RegularitySummary::empty() const {
    return !velocity && !vorticity && !density && !momentum && velocity_lp.empty() &&
           vorticity_lp.empty() && div_velocity_lp.empty() && curl_vorticity_lp.empty() &&
           !sqg_grad_theta;
}

std::string to_string(ClauseVerdict v) {
    switch (v) {
        case ClauseVerdict::satisfied: return "SATISFIED";
        case ClauseVerdict::not_satisfied: return "NOT SATISFIED";
        case ClauseVerdict::indeterminate: return "INDETERMINATE";
    }
    return "?";
}

std::vector<ClauseReport> evaluate_criteria(const RegularitySummary& s) {
    std::vector<ClauseReport> reports;
    ClauseBuilder b{reports};
    const double third = 1.0 / 3.0;

    // ---- compressible theorem: shared hypotheses, then cases (1)-(4)
    {
        std::vector<std::string> missing;
        bool base_ok = true;
        if (!s.density_bounded) { missing.push_back("density bounds 0<c1<=rho<=c2"); }
        if (!s.pressure_c2) { missing.push_back("pi in C^2[c1,c2]"); }
        std::string a_rho, a_mom, a_vel;
        ClauseVerdict v_rho = besov_clause(s.density, third, 3, 3, true, a_rho);
        ClauseVerdict v_mom = besov_clause(s.momentum, third, 3, 3, false, a_mom);
        ClauseVerdict v_vel = besov_clause(s.velocity, third, 3, 3, true, a_vel);
        base_ok = missing.empty() && v_rho == ClauseVerdict::satisfied &&
                  v_mom == ClauseVerdict::satisfied && v_vel == ClauseVerdict::satisfied;
        const bool base_indeterminate =
            v_rho == ClauseVerdict::indeterminate || v_mom == ClauseVerdict::indeterminate ||
            v_vel == ClauseVerdict::indeterminate;

        auto compressible_case = [&](const std::string& id, ClauseVerdict case_v,
                                     const std::string& case_a) {
            std::ostringstream arith;
            arith << "base: rho {" << a_rho << "}; rho v {" << a_mom << "}; v {" << a_vel << "}";
            for (const auto& m : missing) arith << "; missing " << m;
            arith << "; case: " << case_a;
            ClauseVerdict v;
            if (case_v == ClauseVerdict::indeterminate || base_indeterminate)
                v = ClauseVerdict::indeterminate;
            else if (base_ok && case_v == ClauseVerdict::satisfied)
                v = ClauseVerdict::satisfied;
            else
                v = ClauseVerdict::not_satisfied;
            b.add(id, v, arith.str());
        };

        {
            std::string a;
            ClauseVerdict v = besov_clause(s.vorticity, third, 3, 3, false, a);
            compressible_case("compressible.1", v, a);
        }
        {
            bool has = has_membership(s.vorticity_lp, 3, 3);
            compressible_case("compressible.2",
                              s.vorticity_lp.empty() ? ClauseVerdict::indeterminate
                              : has                  ? ClauseVerdict::satisfied
                                                     : ClauseVerdict::not_satisfied,
                              has ? "omega in L^3 L^3" : "omega in L^3 L^3 not measured");
        }
        {
            // some measured (p,q) with 2<p,q<inf and v in L^{p/(p-2)} L^{q/(q-2)}
            ClauseVerdict v = ClauseVerdict::indeterminate;
            std::string a = "no (p,q) pair measured";
            if (!s.vorticity_lp.empty() && !s.velocity_lp.empty()) {
                v = ClauseVerdict::not_satisfied;
                for (const auto& w : s.vorticity_lp) {
                    if (!(w.time_exponent > 2.0 && w.space_exponent > 2.0)) continue;
                    double pt = w.time_exponent / (w.time_exponent - 2.0);
                    double qs = w.space_exponent / (w.space_exponent - 2.0);
                    std::ostringstream arith;
                    arith << "omega in L^" << fmt(w.time_exponent) << " L^"
                          << fmt(w.space_exponent) << " needs v in L^" << fmt(pt) << " L^"
                          << fmt(qs);
                    a = arith.str();
                    if (has_membership(s.velocity_lp, pt, qs)) {
                        v = ClauseVerdict::satisfied;
                        break;
                    }
                }
            }
            compressible_case("compressible.3", v, a);
        }
        {
            ClauseVerdict v = ClauseVerdict::indeterminate;
            std::string a = "div v / omega memberships not measured";
            if (s.dim != 3) {
                v = ClauseVerdict::not_satisfied;
                a = "requires d=3";
            } else if (!s.div_velocity_lp.empty() || !s.vorticity_lp.empty()) {
                bool ok = has_membership(s.div_velocity_lp, 3, 2.25) &&
                          has_membership(s.vorticity_lp, 3, 2.25);
                v = ok ? ClauseVerdict::satisfied : ClauseVerdict::not_satisfied;
                a = "div v, omega in L^3 L^{9/4}, d=3";
            }
            compressible_case("compressible.4", v, a);
        }
    }

    // ---- incompressible theorem, cases (1)-(5)
    {
        auto exponent_relation = [&](const BesovMeasurement& v, const BesovMeasurement& w,
                                     std::string& a) {
            const double k = v.time_exponent, l = w.time_exponent;
            const double p = v.integrability, q = w.integrability;
            const double lhs_time = 2.0 / k + 1.0 / l;
            const double lhs_space = 2.0 / p + 1.0 / q;
            const double reg = 2.0 * v.exponent + w.exponent;
            std::ostringstream arith;
            arith << "2/k+1/l = 2/" << fmt(k) << "+1/" << fmt(l) << " = " << lhs_time
                  << "; 2/p+1/q = 2/" << fmt(p) << "+1/" << fmt(q) << " = " << lhs_space
                  << "; 2a+b = 2*" << v.exponent << "+" << w.exponent << " = " << reg;
            a = arith.str();
            return close(lhs_time, 1.0) && close(lhs_space, 1.0) && at_least(reg, 1.0);
        };

        for (int variant = 1; variant <= 2; ++variant) {
            const std::string id = "incompressible." + std::to_string(variant);
            if (!s.velocity || !s.vorticity) {
                b.indeterminate(id, "velocity/vorticity Besov measurement missing");
                continue;
            }
            std::string a;
            bool arith_ok = exponent_relation(*s.velocity, *s.vorticity, a);
            const bool v_cn = variant == 1;
            bool v_ok = v_cn ? trend_ok_for_cN(s.velocity->trend)
                             : trend_ok_for_inf(s.velocity->trend);
            bool w_ok = v_cn ? trend_ok_for_inf(s.vorticity->trend)
                             : trend_ok_for_cN(s.vorticity->trend);
            a += v_cn ? "; needs v c(N)-type, omega inf-type" : "; needs v inf-type, omega c(N)-type";
            a += "; trends v=" + to_string(s.velocity->trend) +
                 ", omega=" + to_string(s.vorticity->trend);
            if (s.velocity->trend == Trend::insufficient ||
                s.vorticity->trend == Trend::insufficient) {
                b.indeterminate(id, a);
            } else {
                b.add(id,
                      arith_ok && v_ok && w_ok ? ClauseVerdict::satisfied
                                               : ClauseVerdict::not_satisfied,
                      a);
            }
        }
        {
            const std::string id = "incompressible.3";
            if (!s.vorticity) {
                b.indeterminate(id, "vorticity Besov measurement missing");
            } else {
                const double q_req = 3.0 * s.dim / (s.dim + 2.0);
                std::string a;
                ClauseVerdict v = besov_clause(s.vorticity, third, q_req, 3, true, a);
                b.add(id, v, a);
            }
        }
        {
            const std::string id = "incompressible.4";
            ClauseVerdict v = ClauseVerdict::indeterminate;
            std::string a = "no (p,q) pair measured";
            if (!s.vorticity_lp.empty() && !s.velocity_lp.empty()) {
                v = ClauseVerdict::not_satisfied;
                for (const auto& w : s.vorticity_lp) {
                    if (!(w.time_exponent > 2.0 && w.space_exponent > 2.0)) continue;
                    double pt = w.time_exponent / (w.time_exponent - 2.0);
                    double qs = w.space_exponent / (w.space_exponent - 2.0);
                    std::ostringstream arith;
                    arith << "omega in L^" << fmt(w.time_exponent) << " L^"
                          << fmt(w.space_exponent) << " needs v in L^" << fmt(pt) << " L^"
                          << fmt(qs);
                    a = arith.str();
                    if (has_membership(s.velocity_lp, pt, qs)) {
                        v = ClauseVerdict::satisfied;
                        break;
                    }
                }
            }
            b.add(id, v, a);
        }
        {
            const std::string id = "incompressible.5";
            ClauseVerdict v = ClauseVerdict::indeterminate;
            std::string a = "curl omega membership not measured";
            if (!s.curl_vorticity_lp.empty() && !s.velocity_lp.empty()) {
                v = ClauseVerdict::not_satisfied;
                for (const auto& w : s.curl_vorticity_lp) {
                    if (!(w.space_exponent >= 1.0)) continue;
                    double pt = 2.0 * w.time_exponent / (w.time_exponent - 1.0);
                    double qs = 2.0 * w.space_exponent / (w.space_exponent - 1.0);
                    std::ostringstream arith;
                    arith << "curl omega in L^" << fmt(w.time_exponent) << " L^"
                          << fmt(w.space_exponent) << " needs v in L^" << fmt(pt) << " L^"
                          << fmt(qs);
                    a = arith.str();
                    if (has_membership(s.velocity_lp, pt, qs)) {
                        v = ClauseVerdict::satisfied;
                        break;
                    }
                }
            }
            b.add(id, v, a);
        }
    }

    // ---- corollary (d=3)
    {
        auto membership_clause = [&](const std::string& id,
                                     const std::vector<LebesgueMembership>& list, double t,
                                     double sp, const std::string& label) {
            if (s.dim != 3) {
                b.add(id, ClauseVerdict::not_satisfied, "requires d=3");
                return;
            }
            if (list.empty()) {
                b.indeterminate(id, label + " membership not measured");
                return;
            }
            bool ok = has_membership(list, t, sp);
            b.add(id, ok ? ClauseVerdict::satisfied : ClauseVerdict::not_satisfied,
                  label + " in L^" + fmt(t) + " L^" + fmt(sp));
        };
        membership_clause("corollary.1", s.vorticity_lp, 3, 2.25, "omega");
        membership_clause("corollary.2", s.curl_vorticity_lp, 3, 9.0 / 7.0, "curl omega");
    }

    // ---- SQG theorem
    {
        const std::string id = "sqg.1";
        if (!s.sqg_grad_theta) {
            b.indeterminate(id, "grad theta Besov measurement missing");
        } else {
            std::string a;
            ClauseVerdict v = besov_clause(s.sqg_grad_theta, third, 1.5, 3, true, a);
            b.add(id, v, a);
        }
    }

    return reports;
}

std::string render_report_text(const std::vector<ClauseReport>& reports) {
    std::ostringstream out;
    out << "clause                verdict         arithmetic\n";
    out << "--------------------  --------------  ----------\n";
    for (const auto& r : reports) {
        std::string id = r.clause_id;
        id.resize(20, ' ');
        std::string v = to_string(r.verdict);
        v.resize(14, ' ');
        out << id << "  " << v << "  " << r.arithmetic << '\n';
    }
    out << "note: the pairing hypothesis div v, curl v in C([0,T];L^{2d/(d+1)}) has no\n"
           "numerical analog on sampled fields and is recorded as assumed.\n";
    return out.str();
}

std::string render_report_json(const std::vector<ClauseReport>& reports) {
    nlohmann::json j;
    j["schema_version"] = 1;
    auto& arr = j["clauses"] = nlohmann::json::array();
    for (const auto& r : reports)
        arr.push_back({{"clause", r.clause_id},
                       {"verdict", to_string(r.verdict)},
                       {"arithmetic", r.arithmetic}});
    j["assumed"] = "div v, curl v in C([0,T];L^{2d/(d+1)}) (pairing well-defined)";
    return j.dump(2);
}

}  // namespace helidiag
