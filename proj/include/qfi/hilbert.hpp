// hilbert.hpp - dense Hermitian operators, Gibbs states and commutators

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace qfi {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Dense Hermitian matrix. Construction checks |H - H^dagger|_max against
// 1e-12 * max(1, |H|_max), then stores the symmetrized matrix.
class HermitianOperator {
public:
    HermitianOperator() = default;
    explicit HermitianOperator(Matrix m);

    static HermitianOperator identity(int dim);
    static HermitianOperator zero(int dim);
    static HermitianOperator diagonal(const std::vector<double>& d);

    int dim() const noexcept { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const noexcept { return m_; }
    cplx operator()(int i, int j) const { return m_(i, j); }
    // Largest |H - H^dagger| entry of the input before symmetrization.
    double asymmetry() const noexcept { return asym_; }

    HermitianOperator shifted(double c) const;  // H + c I
    HermitianOperator scaled(double s) const;   // s H

private:
    Matrix m_;
    double asym_ = 0.0;
};

struct SpectralDecomposition {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // columns
    int dim() const noexcept { return static_cast<int>(eigenvalues.size()); }
};

SpectralDecomposition eigendecompose(const HermitianOperator& H);

// rho = exp(-T) / Z in the eigenbasis of T.
class GibbsState {
public:
    static constexpr double kWeightFloor = 1e-300;

    GibbsState(HermitianOperator T, SpectralDecomposition dec);

    int dim() const noexcept { return dec_.dim(); }
    const HermitianOperator& generator() const noexcept { return T_; }
    const SpectralDecomposition& decomposition() const noexcept { return dec_; }
    const RealVector& energies() const noexcept { return dec_.eigenvalues; }
    const RealVector& weights() const noexcept { return w_; }
    const RealVector& log_weights() const noexcept { return logw_; }
    double log_partition() const noexcept { return logZ_; }
    // True when some weight fell below kWeightFloor and was clamped.
    bool clamped() const noexcept { return clamped_; }

    // U^dagger A U, the matrix of A in the eigenbasis of T.
    Matrix to_eigenbasis(const Matrix& A) const;
    // Same for a Hermitian A, re-symmetrized so that |A_mn| = |A_nm| exactly.
    Matrix to_eigenbasis(const HermitianOperator& A) const;
    // rho as a lab-basis matrix.
    Matrix density_matrix() const;

private:
    HermitianOperator T_;
    SpectralDecomposition dec_;
    RealVector w_;
    RealVector logw_;
    double logZ_ = 0.0;
    bool clamped_ = false;
};

GibbsState gibbs_state(const HermitianOperator& T);

// Matrix elements of an operator in the T eigenbasis.
struct ObservableInEigenbasis {
    Matrix elements;
};

double thermal_average(const GibbsState& state, const HermitianOperator& A);

struct CheckedAverage {
    double value = 0.0;
    double imag_residue = 0.0;
    bool warning = false;  // |imag| > 1e-12 * max(1, |value|)
};

// <A>_T for an arbitrary (not necessarily Hermitian) matrix.
cplx thermal_average(const GibbsState& state, const Matrix& A);
CheckedAverage thermal_average_checked(const GibbsState& state, const Matrix& A);

enum class Parity { Hermitian, AntiHermitian };

struct NestedCommutator {
    Matrix matrix;
    Parity parity;
};

Matrix commutator(const Matrix& A, const Matrix& B);

// R_0 = S, R_p = [T, R_{p-1}]. R_p^dagger = (-1)^p R_p.
NestedCommutator nested_commutator(const HermitianOperator& T, const HermitianOperator& S, int p);

// X with X_mn = S_mn / (T_m - T_n), zero diagonal, so that [T, X] = S.
ObservableInEigenbasis solve_xst(const HermitianOperator& T, const HermitianOperator& S);

// Same solve for an already diagonalized T.
ObservableInEigenbasis solve_xst(const GibbsState& state, const HermitianOperator& S);

// Logarithmic mean (a - b)/(ln a - ln b) from ln a and ln b, with the limit a
// at a = b. Evaluated as max(a,b) * (1 - e^{-d})/d, d = |ln a - ln b|.
double logarithmic_mean(double log_a, double log_b);

void require_same_dim(int a, int b, const char* where);

} // namespace qfi
