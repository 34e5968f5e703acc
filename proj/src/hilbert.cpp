#include "qfi/hilbert.hpp"

#include "qfi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace qfi {

void require_same_dim(int a, int b, const char* where) {
    if (a != b) {
        throw DimensionMismatch(std::string(where) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
    }
}

double logarithmic_mean(double log_a, double log_b) {
    const double hi = std::max(log_a, log_b);
    const double d = hi - std::min(log_a, log_b);
    if (d == 0.0) return std::exp(hi);
    // (1 - e^{-d})/d, series below 1e-4
    const double r = d < 1e-4 ? 1.0 - d * (0.5 - d * (1.0 / 6 - d / 24)) : -std::expm1(-d) / d;
    return std::exp(hi) * r;
}

HermitianOperator::HermitianOperator(Matrix m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("HermitianOperator: matrix must be square");
    if (m.rows() < 1) throw ValidationError("HermitianOperator: dimension must be >= 1");
    if (!m.allFinite()) throw ValidationError("HermitianOperator: non-finite entries");
    const Matrix adj = m.adjoint();
    asym_ = (m - adj).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (asym_ > 1e-12 * scale) {
        std::ostringstream os;
        os << "HermitianOperator: matrix is not Hermitian (max |H - H^dagger| = " << asym_ << ")";
        throw ValidationError(os.str());
    }
    m_ = 0.5 * (m + adj);
}

HermitianOperator HermitianOperator::identity(int dim) {
    return HermitianOperator(Matrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::zero(int dim) {
    return HermitianOperator(Matrix::Zero(dim, dim));
}

HermitianOperator HermitianOperator::diagonal(const std::vector<double>& d) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
    return HermitianOperator(std::move(m));
}

HermitianOperator HermitianOperator::shifted(double c) const {
    HermitianOperator r = *this;
    r.m_.diagonal().array() += c;
    return r;
}

HermitianOperator HermitianOperator::scaled(double s) const {
    HermitianOperator r = *this;
    r.m_ *= s;
    return r;
}

SpectralDecomposition eigendecompose(const HermitianOperator& H) {
    if (H.dim() < 1) throw ValidationError("eigendecompose: empty operator");
    Eigen::SelfAdjointEigenSolver<Matrix> es(H.matrix());
    if (es.info() != Eigen::Success) throw ValidationError("eigendecompose: eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

GibbsState::GibbsState(HermitianOperator T, SpectralDecomposition dec) : T_(std::move(T)), dec_(std::move(dec)) {
    const RealVector& e = dec_.eigenvalues;
    const int n = dec_.dim();
    // log-sum-exp with shift by the ground energy
    const double e0 = e.minCoeff();
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::exp(-(e(i) - e0));
    logZ_ = -e0 + std::log(s);
    logw_.resize(n);
    w_.resize(n);
    for (int i = 0; i < n; ++i) {
        logw_(i) = -e(i) - logZ_;
        w_(i) = std::exp(logw_(i));
        if (w_(i) < kWeightFloor) {
            w_(i) = kWeightFloor;
            logw_(i) = std::log(kWeightFloor);
            clamped_ = true;
        }
    }
}

Matrix GibbsState::to_eigenbasis(const Matrix& A) const {
    require_same_dim(static_cast<int>(A.rows()), dim(), "to_eigenbasis");
    const Matrix& U = dec_.eigenvectors;
    return U.adjoint() * A * U;
}

Matrix GibbsState::to_eigenbasis(const HermitianOperator& A) const {
    const Matrix Ae = to_eigenbasis(A.matrix());
    return 0.5 * (Ae + Ae.adjoint());
}

Matrix GibbsState::density_matrix() const {
    const Matrix& U = dec_.eigenvectors;
    return U * w_.cast<cplx>().asDiagonal() * U.adjoint();
}

GibbsState gibbs_state(const HermitianOperator& T) {
    return GibbsState(T, eigendecompose(T));
}

cplx thermal_average(const GibbsState& state, const Matrix& A) {
    const Matrix Ae = state.to_eigenbasis(A);
    cplx s = 0.0;
    for (int m = 0; m < state.dim(); ++m) s += state.weights()(m) * Ae(m, m);
    return s;
}

CheckedAverage thermal_average_checked(const GibbsState& state, const Matrix& A) {
    const cplx v = thermal_average(state, A);
    CheckedAverage r;
    r.value = v.real();
    r.imag_residue = v.imag();
    r.warning = std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real()));
    return r;
}

double thermal_average(const GibbsState& state, const HermitianOperator& A) {
    require_same_dim(A.dim(), state.dim(), "thermal_average");
    return thermal_average(state, A.matrix()).real();
}

Matrix commutator(const Matrix& A, const Matrix& B) {
    return A * B - B * A;
}

NestedCommutator nested_commutator(const HermitianOperator& T, const HermitianOperator& S, int p) {
    if (p < 0) throw ValidationError("nested_commutator: p must be >= 0");
    require_same_dim(T.dim(), S.dim(), "nested_commutator");
    // The trace part of T drops out of every commutator; removing it keeps the
    // iterates small.
    Matrix Tc = T.matrix();
    const cplx mean = Tc.trace() / static_cast<double>(T.dim());
    Tc.diagonal().array() -= mean.real();
    Matrix R = S.matrix();
    for (int k = 0; k < p; ++k) R = commutator(Tc, R);
    return {std::move(R), p % 2 == 0 ? Parity::Hermitian : Parity::AntiHermitian};
}

ObservableInEigenbasis solve_xst(const GibbsState& state, const HermitianOperator& S) {
    require_same_dim(S.dim(), state.dim(), "solve_xst");
    const Matrix Se = state.to_eigenbasis(S);
    const RealVector& e = state.energies();
    const int n = state.dim();
    const double scale = std::max(1.0, Se.cwiseAbs().maxCoeff());

    std::vector<int> bad;
    for (int m = 0; m < n; ++m)
        if (std::abs(Se(m, m)) > 1e-12 * scale) bad.push_back(m);
    if (!bad.empty()) {
        std::ostringstream os;
        os << "solve_xst: S has nonzero diagonal elements in the T eigenbasis at indices";
        for (int m : bad) os << ' ' << m;
        throw PreconditionError(os.str());
    }

    Matrix X = Matrix::Zero(n, n);
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
            if (m == k) continue;
            const double gap = e(m) - e(k);
            if (std::abs(gap) < 1e-10) {
                if (std::abs(Se(m, k)) > 1e-12 * scale) {
                    std::ostringstream os;
                    os << "solve_xst: S couples degenerate levels " << m << " and " << k;
                    throw SingularityError(os.str());
                }
                continue;
            }
            X(m, k) = Se(m, k) / gap;
        }
    }
    return {std::move(X)};
}

ObservableInEigenbasis solve_xst(const HermitianOperator& T, const HermitianOperator& S) {
    return solve_xst(gibbs_state(T), S);
}

} // namespace qfi
