#pragma once

#include <random>

#include "etr/explorer.hpp"
#include "etr/saturation.hpp"

namespace etr::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Random commuting estimator pair: a shared random eigenbasis with
/// independent Gaussian eigenvalues, optionally on system (x) ancilla.
inline JointScheme random_commuting_scheme(int sysDim, int ancDim, std::mt19937_64& rng) {
    const int n = sysDim * ancDim;
    const Matrix u = haar_random_unitary(n, rng());
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix estA = Matrix::Zero(n, n), estB = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const Matrix proj = u.col(k) * u.col(k).adjoint();
        estA += gauss(rng) * proj;
        estB += gauss(rng) * proj;
    }
    std::optional<QuantumState> ancilla;
    if (ancDim > 1) ancilla = haar_random_state(ancDim, rng());
    return build_scheme(validate_observable((estA + estA.adjoint()) / 2.0),
                        validate_observable((estB + estB.adjoint()) / 2.0), ancilla);
}

/// Unit vector in R^n.
inline Eigen::VectorXd random_unit_real(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = gauss(rng);
    return v / v.norm();
}

} // namespace etr::testing
