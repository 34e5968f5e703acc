// models.hpp - spin-S in a field and one-mode bosonic k-photon benchmarks

#pragma once

#include "qfi/hilbert.hpp"
#include "qfi/monotone_catalog.hpp"

#include <vector>

namespace qfi {

struct SpinModel {
    double S = 0.5;       // half-integer >= 1/2
    double omega0 = 1.0;  // > 0
};

struct BosonModel {
    int k = 1;
    double omega = 1.0;
    int cutoff = 60;  // highest Fock state kept; dim = cutoff + 1
};

struct ModelOperators {
    HermitianOperator T;
    HermitianOperator S;
};

struct SpinMatrices {
    Matrix Sx, Sy, Sz;
};

// Standard representation in the basis m = S, S-1, ..., -S.
SpinMatrices spin_matrices(double S);

// T = omega0 S_z, S = S_x.
ModelOperators spin_build(const SpinModel& model);

struct SpinRatioReport {
    double d_f = 0.0;
    double d_bkm = 0.0;
    double ratio = 0.0;      // d_f / d_BKM
    double expected = 0.0;   // g_f(omega0/2)
    double discrepancy = 0.0;
    bool support_ok = false; // DSF lines only at 0 and +-omega0
    // d_BKM = (1/16)(omega0/2)^{-1} [(2S+1) coth((2S+1) omega0/2) - coth(omega0/2)]
    double bkm_closed_form = 0.0;
    // S B_S(h/2) (omega0/2)^{-1} g_f(omega0/2), evaluated at h = omega0 and at h = 0.
    double printed_at_omega0 = 0.0;
    double printed_at_zero_field = 0.0;
    double printed_over_brute = 0.0;
    bool pass = false;       // support_ok and discrepancy <= 1e-10
};

SpinRatioReport spin_ratio_property(const SpinModel& model, const MonotoneFamily& family);

// Throws CutoffError when rho_cutoff >= 1e-12.
void check_boson_cutoff(const BosonModel& model);

// T = omega b^dagger b, S = (b^dagger)^k + b^k on Fock states 0..cutoff.
// With enforce_cutoff false the tail check is skipped (callers report it).
ModelOperators boson_build(const BosonModel& model, bool enforce_cutoff = true);

struct BosonCorrelators {
    double K = 0.0;  // <b^dagger^k b^k> - <b^k b^dagger^k>
    double L = 0.0;  // <b^dagger^k b^k + b^k b^dagger^k>
    double nbar = 0.0;
    double K_printed = 0.0;  // k = 1: -1; k = 2: -2(2n+1)
    double L_printed = 0.0;  // k = 1: 2n+1; k = 2: 4n^2
};

BosonCorrelators boson_correlators(const BosonModel& model);

struct BosonClosedForms {
    double via_nu1 = 0.0;  // d_BKM + (1/4)(k w/2)^{-1}[1 - g_f(k w/2)] K
    double via_nu2 = 0.0;  // d_MC - (1/4)[1 - ĝ_f(k w/2)] L
    double brute = 0.0;    // spectral route on the truncated model
};

BosonClosedForms boson_closed_forms(const BosonModel& model, const MonotoneFamily& family);

struct PrefactorRow {
    int p = 0;                // index of F_p
    double numeric = 0.0;     // F_p from nested commutators
    double kw_form = 0.0;     // -2(k w)^{p-1} K (even p), 2(k w)^{p-1} L (odd p)
    double w_form = 0.0;      // same with w^{p-1} in place of (k w)^{p-1}
};

// F_p for p = 1..pmax against both prefactor conventions.
std::vector<PrefactorRow> boson_prefactor_report(const BosonModel& model, int pmax);

} // namespace qfi
