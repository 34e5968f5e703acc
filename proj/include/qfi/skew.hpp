// skew.hpp - Wigner-Yanase-Dyson and metric-adjusted skew information

#pragma once

#include "qfi/dsf.hpp"
#include "qfi/hilbert.hpp"
#include "qfi/metrics.hpp"
#include "qfi/monotone_catalog.hpp"

#include <optional>

namespace qfi {

struct SkewResult {
    double value = 0.0;
    MonotoneFamily family = MonotoneFamily::bkm();
    std::optional<double> alpha;
};

// I(alpha) = Tr rho S^2 - Tr rho^alpha S rho^{1-alpha} S, 0 < alpha < 1.
SkewResult wyd_skew(const GibbsState& state, const HermitianOperator& S, double alpha);
// -(1/2) Tr [rho^alpha, S][rho^{1-alpha}, S] in the lab basis.
double wyd_skew_commutator_form(const GibbsState& state, const HermitianOperator& S, double alpha);

// I^f = (f(0)/2) sum_{m,n} (rho_m - rho_n)^2 / (rho_n f(rho_m/rho_n)) |S_mn|^2.
// Throws UnsupportedFamilyError when f(0) = 0.
SkewResult metric_adjusted_skew(const GibbsState& state, const HermitianOperator& S, const MonotoneFamily& family);

// d~^2_f(S,S) = d^2_f(R_1, R_1), R_1 = [T, S]:
// (1/4) sum_{m,n} g_f(x) L(rho_m, rho_n) (ln rho_n/rho_m)^2 |S_mn|^2.
MetricResult tilde_metric(const GibbsState& state, const HermitianOperator& S, const MonotoneFamily& family);
// The same quantity as a line sum (1/4) sum_j omega_j g_f(omega_j/2) (1 - e^{-omega_j}) Q_j.
double tilde_metric_lines(const LineSpectrum& Q, const MonotoneFamily& family);

// int_0^1 I(alpha) d alpha by adaptive Gauss-Kronrod.
double integrated_wyd(const GibbsState& state, const HermitianOperator& S);
// (1/2) int_0^1 alpha (1 - alpha) d~^2_{WYD(alpha)} d alpha; equals d^2_MC - d^2_BKM.
double integrated_tilde_wyd(const GibbsState& state, const HermitianOperator& S);
// (1/8) int_0^1 d~^2_{WYD(alpha)} d alpha, kept for comparison with the weighted form.
double integrated_tilde_wyd_unweighted(const GibbsState& state, const HermitianOperator& S);

// <[[S, T], S]>_T.
double double_commutator_mean(const GibbsState& state, const HermitianOperator& S);

} // namespace qfi
