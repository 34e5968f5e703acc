// metrics.hpp - monotone Riemannian metrics d^2_f(S,S) on Gibbs states
//
// Normalization: d^2_MC = Var(S)/4, d^2_BKM = F_0(dS;dS)/4.
// Routes:
//   oracle    (1/4) sum_{m,n} c_f(rho_m, rho_n) |<m|d rho|n>|^2
//   spectral  (1/4) sum_{m,n} g_f(x) sqrt(rho_m rho_n) sinh(x)/x |dS_mn|^2,  x = ln(rho_n/rho_m)/2
//   dsf       (1/4) { sum_j g_f(w_j/2) (1 - e^{-w_j})/w_j Q_j - <S>^2 }
//   series A  d^2_BKM + (1/4) sum_l 2^{1-2l} a_{2l-1} M_{2l-1}
//   series B  d^2_MC  + (1/4) sum_l 2^{-2l}  a_{2l}   M_{2l}

#pragma once

#include "qfi/dsf.hpp"
#include "qfi/hilbert.hpp"
#include "qfi/monotone_catalog.hpp"

#include <optional>
#include <string>

namespace qfi {

enum class Method { MCOracle, Spectral, DSFSum, SeriesA, SeriesB };

std::string method_name(Method m);

struct MetricDiagnostics {
    std::optional<int> truncation;
    bool convergence_radius_ok = true;
    int degenerate_pairs_handled = 0;
    double radius = 0.0;          // series radius of g_f or ĝ_f (series methods)
    double max_half_omega = 0.0;  // max |omega_j| / 2 over the spectrum (series methods)
    double last_term = 0.0;       // magnitude of the l = L term (series methods)
};

struct MetricResult {
    double value = 0.0;
    Method method = Method::Spectral;
    MetricDiagnostics diagnostics;
};

MetricResult metric_mc_oracle(const GibbsState& state, const HermitianOperator& S, const MonotoneFamily& family);
MetricResult metric_spectral(const GibbsState& state, const HermitianOperator& S, const MonotoneFamily& family);
MetricResult metric_from_dsf(const LineSpectrum& Q, const MonotoneFamily& family);
MetricResult metric_series_A(const GibbsState& state, const HermitianOperator& S, const MonotoneFamily& family,
                             int L);
MetricResult metric_series_B(const GibbsState& state, const HermitianOperator& S, const MonotoneFamily& family,
                             int L);

// d^2_f - d^2_BKM = (1/8) sum_j (w_j/2)^{-1} [g_f(w_j/2) - 1] chi_j.
double metric_difference_to_bkm(const GibbsState& state, const HermitianOperator& S, const MonotoneFamily& family);

// d^2_f(dA, dB) over the cross line spectrum. Hermitian symmetric in (A, B).
cplx cross_metric(const GibbsState& state, const HermitianOperator& A, const HermitianOperator& B,
                  const MonotoneFamily& family);
// Same quantity from the c_f double sum.
cplx cross_metric_oracle(const GibbsState& state, const HermitianOperator& A, const HermitianOperator& B,
                         const MonotoneFamily& family);

// 4 d^2_Bures.
double fidelity_susceptibility(const GibbsState& state, const HermitianOperator& S);

// Partial sum of d^2_BKM - d^2_Bures in nested-commutator moments:
// -(1/4) sum_{l=1}^L 2^{1-2l} 2^{2l+2}(2^{2l+2}-1) B_{2l+2}/(2l+2)! M_{2l-1}.
double bures_commutator_series(const GibbsState& state, const HermitianOperator& S, int L);

// Variance <S^2> - <S>^2 computed from centered eigenbasis elements.
double variance(const GibbsState& state, const HermitianOperator& S);

} // namespace qfi
