// fixtures.hpp - shared operators for the unit tests

#pragma once

#include "qfi/hilbert.hpp"

#include <algorithm>
#include <cmath>

namespace qfi::testing {

inline Matrix sigma_x() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = m(1, 0) = 1.0;
    return m;
}

inline Matrix sigma_y() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    return m;
}

inline Matrix sigma_z() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

// T = diag(0, 1), S = sigma_x.
struct Qubit {
    HermitianOperator T = HermitianOperator::diagonal({0.0, 1.0});
    HermitianOperator S = HermitianOperator(sigma_x());
    GibbsState state = gibbs_state(T);
};

inline const double kRho1 = 1.0 / (1.0 + std::exp(-1.0));
inline const double kRho2 = 1.0 - kRho1;

inline double rel(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

} // namespace qfi::testing
