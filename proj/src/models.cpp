#include "qfi/models.hpp"

#include "qfi/dsf.hpp"
#include "qfi/errors.hpp"
#include "qfi/metrics.hpp"

#include <cmath>

namespace qfi {

namespace {

void check_spin(const SpinModel& m) {
    const double twoS = 2.0 * m.S;
    if (!(m.S >= 0.5) || std::abs(twoS - std::round(twoS)) > 1e-12) {
        throw ValidationError("spin model: S must be a positive half-integer");
    }
    if (!(m.omega0 > 0.0)) throw ValidationError("spin model: omega0 must be positive");
}

void check_boson(const BosonModel& m) {
    if (m.k < 1) throw ValidationError("boson model: k must be >= 1");
    if (!(m.omega > 0.0)) throw ValidationError("boson model: omega must be positive");
    if (m.cutoff < m.k) throw ValidationError("boson model: cutoff must be >= k");
}

Matrix annihilation(int cutoff) {
    Matrix b = Matrix::Zero(cutoff + 1, cutoff + 1);
    for (int n = 1; n <= cutoff; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
    return b;
}

Matrix power(const Matrix& a, int k) {
    Matrix r = Matrix::Identity(a.rows(), a.cols());
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

double coth(double x) {
    return 1.0 / std::tanh(x);
}

} // namespace

SpinMatrices spin_matrices(double S) {
    check_spin({S, 1.0});
    const int dim = static_cast<int>(std::lround(2.0 * S)) + 1;
    Matrix sz = Matrix::Zero(dim, dim);
    Matrix sp = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const double m = S - i;
        sz(i, i) = m;
        // S+ |m> = sqrt(S(S+1) - m(m+1)) |m+1>, and |m+1> has index i-1
        if (i > 0) sp(i - 1, i) = std::sqrt(S * (S + 1.0) - m * (m + 1.0));
    }
    const Matrix sm = sp.adjoint();
    const cplx two_i(0.0, 2.0);
    return {0.5 * (sp + sm), (sp - sm) / two_i, sz};
}

ModelOperators spin_build(const SpinModel& model) {
    check_spin(model);
    const SpinMatrices s = spin_matrices(model.S);
    return {HermitianOperator(model.omega0 * s.Sz), HermitianOperator(s.Sx)};
}

SpinRatioReport spin_ratio_property(const SpinModel& model, const MonotoneFamily& family) {
    const ModelOperators ops = spin_build(model);
    const GibbsState state = gibbs_state(ops.T);
    SpinRatioReport r;
    const double w0 = model.omega0;
    r.d_f = metric_spectral(state, ops.S, family).value;
    r.d_bkm = metric_spectral(state, ops.S, MonotoneFamily::bkm()).value;
    r.ratio = r.d_f / r.d_bkm;
    r.expected = eval_g(family, 0.5 * w0);
    r.discrepancy = std::abs(r.ratio - r.expected) / r.expected;

    r.support_ok = true;
    const LineSpectrum Q = build_dsf(state, ops.S);
    for (const auto& l : Q.lines()) {
        const double a = std::abs(l.omega);
        if (!(a < 1e-9 || std::abs(a - w0) < 1e-9 * std::max(1.0, w0))) r.support_ok = false;
    }

    const double n2 = 2.0 * model.S + 1.0;
    const auto brillouin_combo = [&](double h) { return n2 * coth(n2 * h / 2.0) - coth(h / 2.0); };
    r.bkm_closed_form = brillouin_combo(w0) / (16.0 * (w0 / 2.0));
    // printed: S B_S(h/2) (w0/2)^{-1} g_f(w0/2) with 2 S B_S(h/2) = brillouin_combo(h)
    r.printed_at_omega0 = 0.5 * brillouin_combo(w0) / (w0 / 2.0) * r.expected;
    r.printed_at_zero_field = 0.0;  // brillouin_combo(h) -> 0 as h -> 0
    r.printed_over_brute = r.printed_at_omega0 / r.d_f;
    r.pass = r.support_ok && r.discrepancy <= 1e-10;
    return r;
}

void check_boson_cutoff(const BosonModel& model) {
    check_boson(model);
    // rho_cutoff = e^{-w N} / Z, Z = sum_{n=0}^{N} e^{-w n}
    const double w = model.omega;
    const int N = model.cutoff;
    const double logZ = std::log(-std::expm1(-w * (N + 1))) - std::log(-std::expm1(-w));
    const double log_tail = -w * N - logZ;
    if (!(log_tail < std::log(1e-12))) {
        throw CutoffError("boson model: cutoff " + std::to_string(N) +
                          " too small, Gibbs weight of the top Fock state exceeds 1e-12");
    }
}

ModelOperators boson_build(const BosonModel& model, bool enforce_cutoff) {
    check_boson(model);
    if (enforce_cutoff) check_boson_cutoff(model);
    const Matrix b = annihilation(model.cutoff);
    const Matrix bk = power(b, model.k);
    Matrix T = Matrix::Zero(model.cutoff + 1, model.cutoff + 1);
    for (int n = 0; n <= model.cutoff; ++n) T(n, n) = model.omega * n;
    return {HermitianOperator(std::move(T)), HermitianOperator(bk.adjoint() + bk)};
}

BosonCorrelators boson_correlators(const BosonModel& model) {
    const ModelOperators ops = boson_build(model);
    const GibbsState state = gibbs_state(ops.T);
    const Matrix bk = power(annihilation(model.cutoff), model.k);
    const Matrix bdk = bk.adjoint();
    BosonCorrelators c;
    // k^k <(Q+ - Q-)(Q+ + Q-)> with Q+ = (b^dagger)^k / sqrt(k^k)
    c.K = thermal_average(state, Matrix((bdk - bk) * (bdk + bk))).real();
    c.L = thermal_average(state, Matrix((bdk + bk) * (bdk + bk))).real();
    c.nbar = 1.0 / std::expm1(model.omega);
    if (model.k == 1) {
        c.K_printed = -1.0;
        c.L_printed = 2.0 * c.nbar + 1.0;
    } else if (model.k == 2) {
        c.K_printed = -2.0 * (2.0 * c.nbar + 1.0);
        c.L_printed = 4.0 * c.nbar * c.nbar;
    }
    return c;
}

BosonClosedForms boson_closed_forms(const BosonModel& model, const MonotoneFamily& family) {
    const ModelOperators ops = boson_build(model);
    const GibbsState state = gibbs_state(ops.T);
    const BosonCorrelators c = boson_correlators(model);
    const double x = 0.5 * model.k * model.omega;
    const double d_bkm = metric_spectral(state, ops.S, MonotoneFamily::bkm()).value;
    const double d_mc = 0.25 * variance(state, ops.S);
    BosonClosedForms r;
    const double one_minus_g = -eval_g_difference(family, MonotoneFamily::bkm(), x);
    r.via_nu1 = d_bkm + 0.25 / x * one_minus_g * c.K;
    r.via_nu2 = d_mc - 0.25 * (1.0 - eval_g_hat(family, x)) * c.L;
    r.brute = metric_spectral(state, ops.S, family).value;
    return r;
}

std::vector<PrefactorRow> boson_prefactor_report(const BosonModel& model, int pmax) {
    const ModelOperators ops = boson_build(model);
    const GibbsState state = gibbs_state(ops.T);
    const BosonCorrelators c = boson_correlators(model);
    const double kw = model.k * model.omega;
    std::vector<PrefactorRow> rows;
    for (int p = 1; p <= pmax; ++p) {
        PrefactorRow row;
        row.p = p;
        row.numeric = functional_F(state, ops.S, p);
        const bool even = p % 2 == 0;
        const double base = even ? -2.0 * c.K : 2.0 * c.L;
        row.kw_form = base * std::pow(kw, p - 1);
        row.w_form = base * std::pow(model.omega, p - 1);
        rows.push_back(row);
    }
    return rows;
}

} // namespace qfi
