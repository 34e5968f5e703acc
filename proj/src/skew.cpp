#include "qfi/skew.hpp"

#include "qfi/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace qfi {

namespace {

// Off-diagonal eigenbasis data reused across quadrature nodes.
struct Pair {
    double lw_m;
    double lw_n;
    double abs2;  // |S_mn|^2
};

std::vector<Pair> off_diagonal_pairs(const GibbsState& state, const HermitianOperator& S) {
    require_same_dim(S.dim(), state.dim(), "skew");
    const Matrix Se = state.to_eigenbasis(S);
    const RealVector& lw = state.log_weights();
    std::vector<Pair> out;
    for (int m = 0; m < state.dim(); ++m)
        for (int n = 0; n < state.dim(); ++n) {
            if (m == n) continue;
            const double a = std::norm(Se(m, n));
            if (a > 0.0) out.push_back({lw(m), lw(n), a});
        }
    return out;
}

double wyd_sum(const std::vector<Pair>& pairs, double alpha) {
    // (rho_m^a - rho_n^a)(rho_m^{1-a} - rho_n^{1-a}) = rho_m expm1(a D) expm1((1-a) D), D = ln rho_n/rho_m
    double s = 0.0;
    for (const auto& p : pairs) {
        const double d = p.lw_n - p.lw_m;
        s += std::exp(p.lw_m) * std::expm1(alpha * d) * std::expm1((1.0 - alpha) * d) * p.abs2;
    }
    return 0.5 * s;
}

double tilde_sum(const std::vector<Pair>& pairs, const MonotoneFamily& family) {
    double s = 0.0;
    for (const auto& p : pairs) {
        const double d = p.lw_n - p.lw_m;
        s += std::exp(eval_log_g(family, 0.5 * d)) * logarithmic_mean(p.lw_m, p.lw_n) * d * d * p.abs2;
    }
    return 0.25 * s;
}

template <class F>
double integrate_unit(F f) {
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, 0.0, 1.0, 15, 1e-12, &err);
}

} // namespace

SkewResult wyd_skew(const GibbsState& state, const HermitianOperator& S, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("wyd_skew: alpha must lie in (0, 1)");
    SkewResult r;
    r.family = MonotoneFamily::wyd(alpha);
    r.alpha = alpha;
    r.value = wyd_sum(off_diagonal_pairs(state, S), alpha);
    return r;
}

double wyd_skew_commutator_form(const GibbsState& state, const HermitianOperator& S, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("wyd_skew: alpha must lie in (0, 1)");
    require_same_dim(S.dim(), state.dim(), "wyd_skew_commutator_form");
    const Matrix& U = state.decomposition().eigenvectors;
    const RealVector& lw = state.log_weights();
    const auto power = [&](double a) {
        const RealVector d = (a * lw.array()).exp();
        return Matrix(U * d.cast<cplx>().asDiagonal() * U.adjoint());
    };
    const Matrix& Sm = S.matrix();
    const Matrix c1 = commutator(power(alpha), Sm);
    const Matrix c2 = commutator(power(1.0 - alpha), Sm);
    return -0.5 * (c1 * c2).trace().real();
}

SkewResult metric_adjusted_skew(const GibbsState& state, const HermitianOperator& S, const MonotoneFamily& family) {
    const double f0 = eval_f_at_zero(family);
    if (!(f0 > 0.0)) {
        throw UnsupportedFamilyError("metric_adjusted_skew: family '" + family.label() +
                                     "' has f(0) = 0 and defines no skew information");
    }
    double s = 0.0;
    for (const auto& p : off_diagonal_pairs(state, S)) {
        const double d = p.lw_m - p.lw_n;  // ln(rho_m/rho_n)
        const double e = std::expm1(d);
        s += std::exp(p.lw_n) * e * e / eval_f(family, std::exp(d)) * p.abs2;
    }
    SkewResult r;
    r.family = family;
    if (family.kind() == FamilyKind::WYD) r.alpha = family.parameter();
    r.value = 0.5 * f0 * s;
    return r;
}

MetricResult tilde_metric(const GibbsState& state, const HermitianOperator& S, const MonotoneFamily& family) {
    MetricResult r;
    r.method = Method::Spectral;
    r.value = tilde_sum(off_diagonal_pairs(state, S), family);
    return r;
}

double tilde_metric_lines(const LineSpectrum& Q, const MonotoneFamily& family) {
    double s = 0.0;
    for (const auto& l : Q.lines()) {
        if (l.omega == 0.0) continue;
        s += l.omega * eval_g(family, 0.5 * l.omega) * -std::expm1(-l.omega) * l.weight.real();
    }
    return 0.25 * s;
}

double integrated_wyd(const GibbsState& state, const HermitianOperator& S) {
    const std::vector<Pair> pairs = off_diagonal_pairs(state, S);
    if (pairs.empty()) return 0.0;
    return integrate_unit([&](double a) { return wyd_sum(pairs, a); });
}

double integrated_tilde_wyd(const GibbsState& state, const HermitianOperator& S) {
    const std::vector<Pair> pairs = off_diagonal_pairs(state, S);
    if (pairs.empty()) return 0.0;
    return 0.5 * integrate_unit([&](double a) {
        if (a <= 0.0 || a >= 1.0) return 0.0;
        return a * (1.0 - a) * tilde_sum(pairs, MonotoneFamily::wyd(a));
    });
}

double integrated_tilde_wyd_unweighted(const GibbsState& state, const HermitianOperator& S) {
    const std::vector<Pair> pairs = off_diagonal_pairs(state, S);
    if (pairs.empty()) return 0.0;
    return 0.125 * integrate_unit([&](double a) {
        a = std::clamp(a, 1e-15, 1.0 - 1e-15);
        return tilde_sum(pairs, MonotoneFamily::wyd(a));
    });
}

double double_commutator_mean(const GibbsState& state, const HermitianOperator& S) {
    const Matrix R1 = nested_commutator(state.generator(), S, 1).matrix;
    const Matrix& Sm = S.matrix();
    return thermal_average(state, Matrix(Sm * R1 - R1 * Sm)).real();
}

} // namespace qfi
