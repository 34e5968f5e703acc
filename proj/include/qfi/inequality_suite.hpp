// inequality_suite.hpp - pass/fail reports for the metric inequalities
//
// Every report states lhs <= rhs. Tolerance is 1e-12 * max(|lhs|, |rhs|, 1e-30).
// Each side is also recomputed through the c_f double-sum oracle; the largest
// relative disagreement is stored in oracle_discrepancy and must stay below
// kOracleTolerance for the report to count as verified.

#pragma once

#include "qfi/hilbert.hpp"
#include "qfi/monotone_catalog.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace qfi {

inline constexpr double kSlackTolerance = 1e-12;
inline constexpr double kOracleTolerance = 1e-10;

struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs
    double tolerance = 0.0;
    bool pass = false;   // slack >= -tolerance
    double oracle_discrepancy = 0.0;

    bool verified() const noexcept { return pass && oracle_discrepancy <= kOracleTolerance; }
};

InequalityReport make_report(std::string name, double lhs, double rhs, double oracle_discrepancy = 0.0);

// d_B <= d_WY <= d_BKM <= d_G <= d_MC <= d_Har (five reports).
std::vector<InequalityReport> chain_check(const GibbsState& state, const HermitianOperator& S);

// 0 <= d_MC - d_BKM <= c/48, 0 <= d_BKM - d_B <= c/48, 0 <= d_MC - d_B <= c/24
// with c = <[[S,T],S]>; each double-sided bound is split into a lower and an
// upper report (six reports).
std::vector<InequalityReport> commutator_bounds(const GibbsState& state, const HermitianOperator& S);

// d_BKM <= sqrt(d_B d_MC), d_G <= sqrt(d_B d_Har), d_G <= sqrt(d_{1/2-d} d_{1/2+d}).
std::vector<InequalityReport> geometric_mean_checks(const GibbsState& state, const HermitianOperator& S, double d);

// |d_h(dA,dB)|^2 <= d_f(dA,dA) d_fbar(dB,dB) with h = sqrt(f fbar), followed by
// the upper bound d_h(dA,dA) <= (1/8) sum_j g_h(w_j/2)(1 + e^{-w_j}) Q_j and
// d_B(dA,dA) <= d_BKM(dA,dA). Supported (f, fbar): (Bures, MC), (Bures, Har),
// (pdiff 1/2-d, pdiff 1/2+d) in either order.
std::vector<InequalityReport> cauchy_schwarz_cross(const GibbsState& state, const HermitianOperator& A,
                                                   const HermitianOperator& B, const MonotoneFamily& f,
                                                   const MonotoneFamily& fbar);

// Geometric-mean family of a supported pair; throws UnsupportedFamilyError otherwise.
MonotoneFamily geometric_mean_family(const MonotoneFamily& f, const MonotoneFamily& fbar);

bool all_verified(const std::vector<InequalityReport>& reports);

nlohmann::json to_json(const InequalityReport& r);

} // namespace qfi
