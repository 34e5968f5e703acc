#include "qfi/metrics.hpp"

#include "qfi/errors.hpp"

#include <cmath>

namespace qfi {

namespace {

// dS = S - <S> in the eigenbasis of T.
Matrix centered_elements(const GibbsState& state, const HermitianOperator& S) {
    Matrix Se = state.to_eigenbasis(S);
    const RealVector& rho = state.weights();
    double mean = 0.0;
    for (int m = 0; m < state.dim(); ++m) mean += rho(m) * Se(m, m).real();
    Se.diagonal().array() -= mean;
    return Se;
}

// g_f(w/2) (1 - e^{-w})/w, the line factor of the dsf route.
double line_factor(const MonotoneFamily& family, double omega) {
    if (omega == 0.0) return 1.0;
    return std::exp(eval_log_g(family, 0.5 * omega) + std::log(detail::expm1_ratio(-omega)));
}

void check_order(int L) {
    if (L < 1) throw ValidationError("series truncation L must be >= 1");
}

MetricDiagnostics series_diagnostics(const GibbsState& state, const HermitianOperator& S,
                                     const MonotoneFamily& family, SeriesKind kind, int L) {
    MetricDiagnostics d;
    d.truncation = L;
    d.radius = series_radius(family, kind);
    d.max_half_omega = 0.5 * build_dsf(state, S).max_abs_omega();
    d.convergence_radius_ok = d.max_half_omega < d.radius;
    return d;
}

} // namespace

std::string method_name(Method m) {
    switch (m) {
    case Method::MCOracle:
        return "oracle";
    case Method::Spectral:
        return "spectral";
    case Method::DSFSum:
        return "dsf";
    case Method::SeriesA:
        return "seriesA";
    case Method::SeriesB:
        return "seriesB";
    }
    return "";
}

double variance(const GibbsState& state, const HermitianOperator& S) {
    require_same_dim(S.dim(), state.dim(), "variance");
    const Matrix dS = centered_elements(state, S);
    const RealVector& rho = state.weights();
    double v = 0.0;
    for (int m = 0; m < state.dim(); ++m) v += rho(m) * dS.col(m).squaredNorm();
    return v;
}

MetricResult metric_mc_oracle(const GibbsState& state, const HermitianOperator& S, const MonotoneFamily& family) {
    require_same_dim(S.dim(), state.dim(), "metric_mc_oracle");
    const Matrix dS = centered_elements(state, S);
    const RealVector& rho = state.weights();
    const RealVector& lw = state.log_weights();
    const int n = state.dim();
    MetricResult r;
    r.method = Method::MCOracle;
    double s = 0.0;
    // diagonal part: sum_m d rho_m^2 / rho_m with d rho_m = -rho_m dS_mm
    for (int m = 0; m < n; ++m) s += rho(m) * std::norm(dS(m, m));
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
            if (m == k) continue;
            const double delta = lw(k) - lw(m);
            double lm;  // (rho_k - rho_m) / (ln rho_k - ln rho_m)
            if (std::abs(delta) < 1e-10) {
                lm = rho(m) * (1.0 + 0.5 * delta);
                if (m < k) ++r.diagnostics.degenerate_pairs_handled;
            } else {
                lm = rho(m) * std::expm1(delta) / delta;
            }
            s += eval_c(family, rho(m), rho(k)) * lm * lm * std::norm(dS(m, k));
        }
    }
    r.value = 0.25 * s;
    return r;
}

MetricResult metric_spectral(const GibbsState& state, const HermitianOperator& S, const MonotoneFamily& family) {
    require_same_dim(S.dim(), state.dim(), "metric_spectral");
    const Matrix dS = centered_elements(state, S);
    const RealVector& lw = state.log_weights();
    const int n = state.dim();
    MetricResult r;
    r.method = Method::Spectral;
    double s = 0.0;
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
            const double a = std::norm(dS(m, k));
            if (a == 0.0) continue;
            const double x = 0.5 * (lw(k) - lw(m));
            if (m < k && std::abs(x) < 0.5e-10) ++r.diagnostics.degenerate_pairs_handled;
            s += std::exp(0.5 * (lw(m) + lw(k)) + detail::log_sinhc(x) + eval_log_g(family, x)) * a;
        }
    }
    r.value = 0.25 * s;
    return r;
}

MetricResult metric_from_dsf(const LineSpectrum& Q, const MonotoneFamily& family) {
    MetricResult r;
    r.method = Method::DSFSum;
    double s = 0.0;
    for (const auto& l : Q.lines()) s += line_factor(family, l.omega) * l.weight.real();
    r.value = 0.25 * (s - Q.mean() * Q.mean());
    return r;
}

MetricResult metric_series_A(const GibbsState& state, const HermitianOperator& S, const MonotoneFamily& family,
                             int L) {
    check_order(L);
    MetricResult r;
    r.method = Method::SeriesA;
    r.diagnostics = series_diagnostics(state, S, family, SeriesKind::G, L);
    const std::vector<double> a = taylor_coeffs(family, SeriesKind::G, L);
    double corr = 0.0;
    for (int l = 1; l <= L; ++l) {
        const double al = a[static_cast<std::size_t>(l - 1)];
        if (al == 0.0) continue;
        const double M = 0.5 * functional_F(state, S, 2 * l);  // M_{2l-1}
        const double term = 0.25 * std::ldexp(al * M, 1 - 2 * l);
        corr += term;
        if (l == L) r.diagnostics.last_term = std::abs(term);
    }
    r.value = metric_spectral(state, S, MonotoneFamily::bkm()).value + corr;
    return r;
}

MetricResult metric_series_B(const GibbsState& state, const HermitianOperator& S, const MonotoneFamily& family,
                             int L) {
    check_order(L);
    MetricResult r;
    r.method = Method::SeriesB;
    r.diagnostics = series_diagnostics(state, S, family, SeriesKind::GHat, L);
    const std::vector<double> a = taylor_coeffs(family, SeriesKind::GHat, L);
    double corr = 0.0;
    for (int l = 1; l <= L; ++l) {
        const double al = a[static_cast<std::size_t>(l - 1)];
        if (al == 0.0) continue;
        const double M = 0.5 * functional_F(state, S, 2 * l + 1);  // M_{2l}
        const double term = 0.25 * std::ldexp(al * M, -2 * l);
        corr += term;
        if (l == L) r.diagnostics.last_term = std::abs(term);
    }
    r.value = 0.25 * variance(state, S) + corr;
    return r;
}

double metric_difference_to_bkm(const GibbsState& state, const HermitianOperator& S, const MonotoneFamily& family) {
    const LineSpectrum Q = build_dsf(state, S);
    const MonotoneFamily bkm = MonotoneFamily::bkm();
    double s = 0.0;
    for (const auto& l : Q.lines()) {
        if (l.omega == 0.0) continue;
        const double chi = -std::expm1(-l.omega) * l.weight.real();
        s += eval_g_difference(family, bkm, 0.5 * l.omega) / (0.5 * l.omega) * chi;
    }
    return 0.125 * s;
}

cplx cross_metric(const GibbsState& state, const HermitianOperator& A, const HermitianOperator& B,
                  const MonotoneFamily& family) {
    const LineSpectrum Q = build_cross_dsf(state, A, B);
    cplx s = 0.0;
    for (const auto& l : Q.lines()) s += line_factor(family, l.omega) * l.weight;
    return 0.25 * s;
}

cplx cross_metric_oracle(const GibbsState& state, const HermitianOperator& A, const HermitianOperator& B,
                         const MonotoneFamily& family) {
    require_same_dim(A.dim(), state.dim(), "cross_metric_oracle");
    require_same_dim(B.dim(), state.dim(), "cross_metric_oracle");
    const Matrix dA = centered_elements(state, A);
    const Matrix dB = centered_elements(state, B);
    const RealVector& rho = state.weights();
    const RealVector& lw = state.log_weights();
    const int n = state.dim();
    cplx s = 0.0;
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
            const double delta = lw(k) - lw(m);
            const double lm = std::abs(delta) < 1e-10 ? rho(m) * (1.0 + 0.5 * delta) : rho(m) * std::expm1(delta) / delta;
            s += eval_c(family, rho(m), rho(k)) * lm * lm * dA(m, k) * dB(k, m);
        }
    }
    return 0.25 * s;
}

double fidelity_susceptibility(const GibbsState& state, const HermitianOperator& S) {
    return 4.0 * metric_spectral(state, S, MonotoneFamily::bures()).value;
}

double bures_commutator_series(const GibbsState& state, const HermitianOperator& S, int L) {
    check_order(L);
    const std::vector<double> a = taylor_coeffs(MonotoneFamily::bures(), SeriesKind::G, L);
    double s = 0.0;
    for (int l = 1; l <= L; ++l) {
        const double M = 0.5 * functional_F(state, S, 2 * l);
        s -= 0.25 * std::ldexp(a[static_cast<std::size_t>(l - 1)] * M, 1 - 2 * l);
    }
    return s;
}

} // namespace qfi
