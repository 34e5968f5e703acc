#include "qfi/inequality_suite.hpp"

#include "qfi/dsf.hpp"
#include "qfi/errors.hpp"
#include "qfi/metrics.hpp"
#include "qfi/skew.hpp"

#include <algorithm>
#include <cmath>

namespace qfi {

namespace {

double rel(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

// Fast (spectral) value together with its oracle disagreement.
struct Checked {
    double value;
    double discrepancy;
};

Checked checked_metric(const GibbsState& state, const HermitianOperator& S, const MonotoneFamily& f) {
    const double fast = metric_spectral(state, S, f).value;
    const double slow = metric_mc_oracle(state, S, f).value;
    return {fast, rel(fast, slow)};
}

// d_f - d_h from the line sum, checked against the oracle values of d_f and d_h.
Checked checked_difference(const GibbsState& state, const HermitianOperator& S, const MonotoneFamily& f,
                           const MonotoneFamily& h) {
    const double fast = metric_difference_to_bkm(state, S, f) - metric_difference_to_bkm(state, S, h);
    const double of = metric_mc_oracle(state, S, f).value;
    const double oh = metric_mc_oracle(state, S, h).value;
    const double scale = std::max(std::abs(of), std::abs(oh));
    return {fast, scale == 0.0 ? 0.0 : std::abs(fast - (of - oh)) / scale};
}

bool same_p(double a, double b) {
    return std::abs(a - b) <= 1e-14;
}

} // namespace

InequalityReport make_report(std::string name, double lhs, double rhs, double oracle_discrepancy) {
    InequalityReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.tolerance = kSlackTolerance * std::max({std::abs(lhs), std::abs(rhs), 1e-30});
    r.pass = r.slack >= -r.tolerance;
    r.oracle_discrepancy = oracle_discrepancy;
    return r;
}

std::vector<InequalityReport> chain_check(const GibbsState& state, const HermitianOperator& S) {
    const std::vector<std::pair<const char*, MonotoneFamily>> chain = {
        {"bures", MonotoneFamily::bures()}, {"wy", MonotoneFamily::wyd(0.5)}, {"bkm", MonotoneFamily::bkm()},
        {"geometric", MonotoneFamily::geometric()}, {"mc", MonotoneFamily::mc()}, {"har", MonotoneFamily::har()}};
    std::vector<Checked> v;
    for (const auto& [name, f] : chain) v.push_back(checked_metric(state, S, f));
    std::vector<InequalityReport> out;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        out.push_back(make_report(std::string("chain: d_") + chain[i].first + " <= d_" + chain[i + 1].first,
                                  v[i].value, v[i + 1].value, std::max(v[i].discrepancy, v[i + 1].discrepancy)));
    }
    return out;
}

std::vector<InequalityReport> commutator_bounds(const GibbsState& state, const HermitianOperator& S) {
    const MonotoneFamily mc = MonotoneFamily::mc(), bkm = MonotoneFamily::bkm(), bures = MonotoneFamily::bures();
    const double c = double_commutator_mean(state, S);
    // oracle for c: sum_j omega_j (1 - e^{-omega_j}) Q_j
    double c_lines = 0.0;
    const LineSpectrum Q = build_dsf(state, S);
    for (const auto& l : Q.lines()) c_lines += l.omega * -std::expm1(-l.omega) * l.weight.real();
    const double c_disc = rel(c, c_lines);

    struct Bound {
        const char* name;
        Checked diff;
        double factor;
        const char* bound_name;
    };
    const Bound bounds[] = {
        {"d_MC - d_BKM", checked_difference(state, S, mc, bkm), 1.0 / 48, "c/48"},
        {"d_BKM - d_B", checked_difference(state, S, bkm, bures), 1.0 / 48, "c/48"},
        {"d_MC - d_B", checked_difference(state, S, mc, bures), 1.0 / 24, "c/24"},
    };
    std::vector<InequalityReport> out;
    for (const auto& b : bounds) {
        out.push_back(make_report(std::string("commutator lower: 0 <= ") + b.name, 0.0, b.diff.value,
                                  b.diff.discrepancy));
        out.push_back(make_report(std::string("commutator upper: ") + b.name + " <= " + b.bound_name,
                                  b.diff.value, b.factor * c, std::max(b.diff.discrepancy, c_disc)));
    }
    return out;
}

std::vector<InequalityReport> geometric_mean_checks(const GibbsState& state, const HermitianOperator& S, double d) {
    const auto [lo, hi] = MonotoneFamily::half_pair(d);
    const Checked b = checked_metric(state, S, MonotoneFamily::bures());
    const Checked mc = checked_metric(state, S, MonotoneFamily::mc());
    const Checked bkm = checked_metric(state, S, MonotoneFamily::bkm());
    const Checked g = checked_metric(state, S, MonotoneFamily::geometric());
    const Checked har = checked_metric(state, S, MonotoneFamily::har());
    const Checked plo = checked_metric(state, S, lo);
    const Checked phi = checked_metric(state, S, hi);
    std::vector<InequalityReport> out;
    out.push_back(make_report("geometric mean: d_BKM <= sqrt(d_B d_MC)", bkm.value, std::sqrt(b.value * mc.value),
                              std::max({bkm.discrepancy, b.discrepancy, mc.discrepancy})));
    out.push_back(make_report("geometric mean: d_G <= sqrt(d_B d_Har)", g.value, std::sqrt(b.value * har.value),
                              std::max({g.discrepancy, b.discrepancy, har.discrepancy})));
    out.push_back(make_report("geometric mean: d_G <= sqrt(d_" + lo.label() + " d_" + hi.label() + ")", g.value,
                              std::sqrt(plo.value * phi.value),
                              std::max({g.discrepancy, plo.discrepancy, phi.discrepancy})));
    return out;
}

MonotoneFamily geometric_mean_family(const MonotoneFamily& f, const MonotoneFamily& fbar) {
    const auto is = [](const MonotoneFamily& x, FamilyKind k) { return x.kind() == k; };
    const auto either = [&](FamilyKind a, FamilyKind b) {
        return (is(f, a) && is(fbar, b)) || (is(f, b) && is(fbar, a));
    };
    if (either(FamilyKind::Bures, FamilyKind::MC)) return MonotoneFamily::bkm();
    if (either(FamilyKind::Bures, FamilyKind::Har)) return MonotoneFamily::geometric();
    if (is(f, FamilyKind::PowerDifference) && is(fbar, FamilyKind::PowerDifference) &&
        same_p(f.parameter() + fbar.parameter(), 1.0)) {
        return MonotoneFamily::geometric();
    }
    throw UnsupportedFamilyError("cauchy_schwarz_cross: no catalog geometric mean for (" + f.label() + ", " +
                                 fbar.label() + ")");
}

std::vector<InequalityReport> cauchy_schwarz_cross(const GibbsState& state, const HermitianOperator& A,
                                                   const HermitianOperator& B, const MonotoneFamily& f,
                                                   const MonotoneFamily& fbar) {
    const MonotoneFamily h = geometric_mean_family(f, fbar);
    std::vector<InequalityReport> out;

    const cplx cross = cross_metric(state, A, B, h);
    const cplx cross_o = cross_metric_oracle(state, A, B, h);
    const Checked da = checked_metric(state, A, f);
    const Checked db = checked_metric(state, B, fbar);
    const double bound = da.value * db.value;
    const double scale = std::sqrt(std::max(bound, 0.0));
    const double cross_disc = scale == 0.0 ? std::abs(cross - cross_o) : std::abs(cross - cross_o) / scale;
    out.push_back(make_report("cauchy-schwarz: |d_" + h.label() + "(dA,dB)|^2 <= d_" + f.label() + "(dA,dA) d_" +
                                  fbar.label() + "(dB,dB)",
                              std::norm(cross), bound, std::max({cross_disc, da.discrepancy, db.discrepancy})));

    // classical-regime upper bound, line sum against eigenbasis sum
    const LineSpectrum Q = build_dsf(state, A).centered();
    double upper = 0.0;
    for (const auto& l : Q.lines())
        upper += eval_g(h, 0.5 * l.omega) * (1.0 + std::exp(-l.omega)) * l.weight.real();
    upper *= 0.125;
    Matrix dA = state.to_eigenbasis(A);
    const RealVector& rho = state.weights();
    const RealVector& lw = state.log_weights();
    double mean = 0.0;
    for (int m = 0; m < state.dim(); ++m) mean += rho(m) * dA(m, m).real();
    dA.diagonal().array() -= mean;
    double upper_o = 0.0;
    for (int m = 0; m < state.dim(); ++m)
        for (int k = 0; k < state.dim(); ++k)
            upper_o += eval_g(h, 0.5 * (lw(k) - lw(m))) * (rho(m) + rho(k)) * std::norm(dA(m, k));
    upper_o *= 0.125;
    const Checked dh = checked_metric(state, A, h);
    out.push_back(make_report("upper bound: d_" + h.label() + "(dA,dA) <= (1/8) sum g (1 + e^-w) Q", dh.value, upper,
                              std::max(dh.discrepancy, rel(upper, upper_o))));

    const Checked dbures = checked_metric(state, A, MonotoneFamily::bures());
    const Checked dbkm = checked_metric(state, A, MonotoneFamily::bkm());
    out.push_back(make_report("upper bound: d_B(dA,dA) <= d_BKM(dA,dA)", dbures.value, dbkm.value,
                              std::max(dbures.discrepancy, dbkm.discrepancy)));
    return out;
}

bool all_verified(const std::vector<InequalityReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const InequalityReport& r) { return r.verified(); });
}

nlohmann::json to_json(const InequalityReport& r) {
    return {{"name", r.name},   {"lhs", r.lhs},   {"rhs", r.rhs},
            {"slack", r.slack}, {"pass", r.pass}, {"tolerance", r.tolerance},
            {"oracle_discrepancy", r.oracle_discrepancy}};
}

} // namespace qfi
