// dsf.hpp - dynamical structure factor as a finite line spectrum
//
// Q_S(w) = sum_{m,n} rho_m |<n|S|m>|^2 delta(w - w_nm),  w_nm = T_n - T_m.
// For a finite system this is an exact delta comb, so every frequency
// integral below is a finite line sum.

#pragma once

#include "qfi/hilbert.hpp"

#include <string>
#include <vector>

namespace qfi {

enum class SpectrumKind {
    DiagonalPair,  // Q_S, nonnegative weights, detailed balance
    CrossPair,     // Q_{dA,dB}, complex weights
    Response,      // chi''/pi lines, odd in omega
};

struct Line {
    double omega = 0.0;
    cplx weight{0.0, 0.0};
};

class LineSpectrum {
public:
    // Sorts, merges frequencies closer than 1e-12, prunes |w| < 1e-16 max|w|.
    // DiagonalPair spectra are checked for detailed balance unless
    // check_balance is false.
    LineSpectrum(std::vector<Line> lines, double mean, SpectrumKind kind, int dim, bool check_balance = true);

    const std::vector<Line>& lines() const noexcept { return lines_; }
    std::size_t size() const noexcept { return lines_.size(); }
    double mean() const noexcept { return mean_; }
    SpectrumKind kind() const noexcept { return kind_; }
    int dim() const noexcept { return dim_; }

    double max_abs_omega() const;
    // Real part of the weight at omega = 0 (zero if there is no elastic line).
    double elastic_weight() const;
    // Spectrum of dS = S - <S>: mean^2 removed from the elastic line.
    LineSpectrum centered() const;

private:
    std::vector<Line> lines_;
    double mean_ = 0.0;
    SpectrumKind kind_;
    int dim_ = 0;
};

// Largest relative violation of w(-omega) = exp(-omega) w(omega).
double detailed_balance_violation(const LineSpectrum& Q);

LineSpectrum build_dsf(const GibbsState& state, const HermitianOperator& S);
LineSpectrum build_cross_dsf(const GibbsState& state, const HermitianOperator& A, const HermitianOperator& B);

// M_p = sum_j omega_j^p w_j, p >= -1, with 0^0 = 1. p = -1 throws
// DivergenceError when the elastic line carries weight.
double moment(const LineSpectrum& Q, int p);

// (1/2) sum_j (1 - e^{-omega_j})/omega_j w_j with the omega = 0 factor set to 1.
// Equals moment(Q, -1) when there is no elastic weight and F_0/2 always.
double regularized_inverse_moment(const LineSpectrum& Q);

// F_p(S;S) = 2 (-1)^{p+1} <R_{p-1} S>_T for p >= 1, F_0 = Bogoliubov-Duhamel.
double functional_F(const GibbsState& state, const HermitianOperator& S, int p);

struct SumRuleCheck {
    int p = 0;
    double half_F = 0.0;   // F_p / 2
    double moment = 0.0;   // M_{p-1} from the line spectrum
    double rel_error = 0.0;
};

SumRuleCheck sum_rule_check(const GibbsState& state, const HermitianOperator& S, const LineSpectrum& Q, int p);

// F_0(A;B) = int_0^1 <e^{tau T} A e^{-tau T} B>_T dtau, evaluated in the eigenbasis.
double bogoliubov_duhamel(const GibbsState& state, const HermitianOperator& A, const HermitianOperator& B);
// Same integral by 32-point Gauss-Legendre quadrature in the lab basis.
double bogoliubov_duhamel_quadrature(const GibbsState& state, const HermitianOperator& A,
                                     const HermitianOperator& B);

// Lines of chi''_S(omega)/pi: weight (1 - e^{-omega}) w, elastic line dropped.
LineSpectrum chi_lines(const LineSpectrum& Q);

// CSV with columns omega, weight_re, weight_im and '# key=value' header lines.
std::string to_csv(const LineSpectrum& Q);

} // namespace qfi
