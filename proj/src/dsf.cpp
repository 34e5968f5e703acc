#include "qfi/dsf.hpp"

#include "qfi/errors.hpp"
#include "qfi/monotone_catalog.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qfi {

namespace {

constexpr double kMergeTol = 1e-12;
constexpr double kPruneRel = 1e-16;
constexpr double kBalanceTol = 1e-12;

std::vector<Line> merge_and_prune(std::vector<Line> in) {
    std::sort(in.begin(), in.end(), [](const Line& a, const Line& b) { return a.omega < b.omega; });
    std::vector<Line> out;
    std::size_t i = 0;
    while (i < in.size()) {
        std::size_t j = i + 1;
        while (j < in.size() && in[j].omega - in[j - 1].omega < kMergeTol) ++j;
        Line g;
        double wsum = 0.0;
        bool has_zero = false;
        for (std::size_t k = i; k < j; ++k) {
            g.weight += in[k].weight;
            wsum += in[k].omega;
            has_zero = has_zero || in[k].omega == 0.0;
        }
        g.omega = has_zero ? 0.0 : wsum / static_cast<double>(j - i);
        out.push_back(g);
        i = j;
    }
    double wmax = 0.0;
    for (const auto& l : out) wmax = std::max(wmax, std::abs(l.weight));
    std::erase_if(out, [&](const Line& l) { return !(std::abs(l.weight) >= kPruneRel * wmax) || wmax == 0.0; });
    return out;
}

const char* kind_name(SpectrumKind k) {
    switch (k) {
    case SpectrumKind::DiagonalPair:
        return "diagonalPair";
    case SpectrumKind::CrossPair:
        return "crossPair";
    case SpectrumKind::Response:
        return "response";
    }
    return "";
}

// Index of the line at frequency omega, or -1.
long find_line(const std::vector<Line>& lines, double omega) {
    const double tol = 2.0 * kMergeTol * std::max(1.0, std::abs(omega));
    auto it = std::lower_bound(lines.begin(), lines.end(), omega - tol,
                               [](const Line& l, double v) { return l.omega < v; });
    if (it != lines.end() && std::abs(it->omega - omega) <= tol) return it - lines.begin();
    return -1;
}

} // namespace

LineSpectrum::LineSpectrum(std::vector<Line> lines, double mean, SpectrumKind kind, int dim, bool check_balance)
    : lines_(merge_and_prune(std::move(lines))), mean_(mean), kind_(kind), dim_(dim) {
    if (kind_ == SpectrumKind::DiagonalPair && check_balance) {
        const double v = detailed_balance_violation(*this);
        if (v > kBalanceTol) {
            std::ostringstream os;
            os << "LineSpectrum: detailed balance violated (relative " << v << ")";
            throw ValidationError(os.str());
        }
    }
}

double LineSpectrum::max_abs_omega() const {
    double m = 0.0;
    for (const auto& l : lines_) m = std::max(m, std::abs(l.omega));
    return m;
}

double LineSpectrum::elastic_weight() const {
    for (const auto& l : lines_)
        if (l.omega == 0.0) return l.weight.real();
    return 0.0;
}

LineSpectrum LineSpectrum::centered() const {
    std::vector<Line> lines = lines_;
    bool found = false;
    for (auto& l : lines) {
        if (l.omega == 0.0) {
            l.weight -= mean_ * mean_;
            found = true;
        }
    }
    if (!found && mean_ != 0.0) lines.push_back({0.0, cplx(-mean_ * mean_, 0.0)});
    return LineSpectrum(std::move(lines), 0.0, kind_, dim_, false);
}

double detailed_balance_violation(const LineSpectrum& Q) {
    const auto& lines = Q.lines();
    double wmax = 0.0;
    for (const auto& l : lines) wmax = std::max(wmax, std::abs(l.weight));
    const double negligible = 1e-15 * wmax;
    double worst = 0.0;
    for (const auto& l : lines) {
        if (l.omega == 0.0) continue;
        const double w = l.weight.real();
        const long k = find_line(lines, -l.omega);
        const double partner = k < 0 ? 0.0 : lines[static_cast<std::size_t>(k)].weight.real();
        // compare the weight at -|omega| with e^{-|omega|} times the weight at +|omega|
        const double hi = l.omega > 0.0 ? w : partner;
        const double lo = l.omega > 0.0 ? partner : w;
        const double expect = hi > 0.0 ? std::exp(-std::abs(l.omega) + std::log(hi)) : 0.0;
        const double scale = std::max(std::abs(lo), std::abs(expect));
        if (scale <= negligible) continue;
        worst = std::max(worst, std::abs(lo - expect) / scale);
    }
    return worst;
}

LineSpectrum build_dsf(const GibbsState& state, const HermitianOperator& S) {
    require_same_dim(S.dim(), state.dim(), "build_dsf");
    const Matrix Se = state.to_eigenbasis(S);
    const RealVector& e = state.energies();
    const RealVector& rho = state.weights();
    const int n = state.dim();
    std::vector<Line> lines;
    lines.reserve(static_cast<std::size_t>(n) * n);
    double mean = 0.0;
    for (int m = 0; m < n; ++m) {
        mean += rho(m) * Se(m, m).real();
        for (int k = 0; k < n; ++k) {
            const double w = rho(m) * std::norm(Se(k, m));
            if (w == 0.0) continue;
            lines.push_back({m == k ? 0.0 : e(k) - e(m), cplx(w, 0.0)});
        }
    }
    return LineSpectrum(std::move(lines), mean, SpectrumKind::DiagonalPair, n, !state.clamped());
}

LineSpectrum build_cross_dsf(const GibbsState& state, const HermitianOperator& A, const HermitianOperator& B) {
    require_same_dim(A.dim(), state.dim(), "build_cross_dsf");
    require_same_dim(B.dim(), state.dim(), "build_cross_dsf");
    Matrix Ae = state.to_eigenbasis(A);
    Matrix Be = state.to_eigenbasis(B);
    const RealVector& e = state.energies();
    const RealVector& rho = state.weights();
    const int n = state.dim();
    double ma = 0.0, mb = 0.0;
    for (int m = 0; m < n; ++m) {
        ma += rho(m) * Ae(m, m).real();
        mb += rho(m) * Be(m, m).real();
    }
    Ae.diagonal().array() -= ma;
    Be.diagonal().array() -= mb;
    std::vector<Line> lines;
    lines.reserve(static_cast<std::size_t>(n) * n);
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
            const cplx w = Ae(k, m) * Be(m, k) * rho(m);
            if (w == cplx(0.0, 0.0)) continue;
            lines.push_back({m == k ? 0.0 : e(k) - e(m), w});
        }
    }
    return LineSpectrum(std::move(lines), 0.0, SpectrumKind::CrossPair, n, false);
}

double moment(const LineSpectrum& Q, int p) {
    if (p < -1) throw ValidationError("moment: p must be >= -1");
    double s = 0.0;
    if (p == -1) {
        double total = 0.0;
        for (const auto& l : Q.lines()) total += std::abs(l.weight);
        for (const auto& l : Q.lines()) {
            if (l.omega == 0.0) {
                if (std::abs(l.weight) > 1e-14 * total) {
                    throw DivergenceError("moment: M_{-1} diverges, the elastic line carries weight");
                }
                continue;
            }
            s += l.weight.real() / l.omega;
        }
        return s;
    }
    for (const auto& l : Q.lines()) s += (p == 0 ? 1.0 : std::pow(l.omega, p)) * l.weight.real();
    return s;
}

double regularized_inverse_moment(const LineSpectrum& Q) {
    double s = 0.0;
    for (const auto& l : Q.lines()) s += detail::expm1_ratio(-l.omega) * l.weight.real();
    return 0.5 * s;
}

double functional_F(const GibbsState& state, const HermitianOperator& S, int p) {
    if (p < 0) throw ValidationError("functional_F: p must be >= 0");
    require_same_dim(S.dim(), state.dim(), "functional_F");
    if (p == 0) return bogoliubov_duhamel(state, S, S);
    const NestedCommutator R = nested_commutator(state.generator(), S, p - 1);
    const double v = thermal_average(state, Matrix(R.matrix * S.matrix())).real();
    return 2.0 * ((p + 1) % 2 == 0 ? 1.0 : -1.0) * v;
}

SumRuleCheck sum_rule_check(const GibbsState& state, const HermitianOperator& S, const LineSpectrum& Q, int p) {
    SumRuleCheck c;
    c.p = p;
    c.half_F = 0.5 * functional_F(state, S, p);
    c.moment = p == 0 ? regularized_inverse_moment(Q) : moment(Q, p - 1);
    const double scale = std::max(std::abs(c.half_F), std::abs(c.moment));
    const double diff = std::abs(c.half_F - c.moment);
    c.rel_error = diff == 0.0 ? 0.0 : diff / scale;
    return c;
}

double bogoliubov_duhamel(const GibbsState& state, const HermitianOperator& A, const HermitianOperator& B) {
    require_same_dim(A.dim(), state.dim(), "bogoliubov_duhamel");
    require_same_dim(B.dim(), state.dim(), "bogoliubov_duhamel");
    const Matrix Ae = state.to_eigenbasis(A);
    const Matrix Be = state.to_eigenbasis(B);
    const RealVector& lw = state.log_weights();
    const int n = state.dim();
    double s = 0.0;
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) s += logarithmic_mean(lw(m), lw(k)) * (Ae(m, k) * Be(k, m)).real();
    return s;
}

double bogoliubov_duhamel_quadrature(const GibbsState& state, const HermitianOperator& A,
                                     const HermitianOperator& B) {
    require_same_dim(A.dim(), state.dim(), "bogoliubov_duhamel_quadrature");
    require_same_dim(B.dim(), state.dim(), "bogoliubov_duhamel_quadrature");
    // Matrix exponentials by scaling and squaring; no eigenvectors involved.
    Matrix T = state.generator().matrix();
    const double shift = T.diagonal().real().mean();
    T.diagonal().array() -= shift;
    Matrix rho = (-T).exp();
    rho /= rho.trace().real();
    const Matrix& Am = A.matrix();
    const Matrix rhoB = B.matrix() * rho;  // Tr(rho X B) = Tr(X B rho)
    auto integrand = [&](double tau) {
        const Matrix E = (tau * T).exp();
        const Matrix Einv = (-tau * T).exp();
        return (E * Am * Einv * rhoB).trace().real();
    };
    return boost::math::quadrature::gauss<double, 32>::integrate(integrand, 0.0, 1.0);
}

LineSpectrum chi_lines(const LineSpectrum& Q) {
    std::vector<Line> lines;
    lines.reserve(Q.size());
    for (const auto& l : Q.lines()) {
        if (l.omega == 0.0) continue;
        lines.push_back({l.omega, -std::expm1(-l.omega) * l.weight});
    }
    return LineSpectrum(std::move(lines), 0.0, SpectrumKind::Response, Q.dim(), false);
}

std::string to_csv(const LineSpectrum& Q) {
    std::string out;
    char buf[128];
    std::snprintf(buf, sizeof buf, "# dim=%d\n# mean_S=%.17g\n# kind=%s\n", Q.dim(), Q.mean(), kind_name(Q.kind()));
    out += buf;
    out += "omega,weight_re,weight_im\n";
    for (const auto& l : Q.lines()) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", l.omega, l.weight.real(), l.weight.imag());
        out += buf;
    }
    return out;
}

} // namespace qfi
