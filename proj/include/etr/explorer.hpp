#pragma once

#include "etr/saturation.hpp"

namespace etr {

enum class PointSource { CONSTRUCTED, RANDOM_SCAN, MIXED_ENVELOPE };

std::string to_string(PointSource source);

/// One point of the empirical (epsA, epsB) landscape. violation is the most
/// negative residual across the implemented relations; for points coming
/// from an actual scheme it stays above -1e-9.
struct FrontierPoint {
    double epsA = 0;
    double epsB = 0;
    PointSource source = PointSource::RANDOM_SCAN;
    std::optional<double> phi_param; // sweep parameter when applicable (lambda weight for envelopes)
    double violation = 0;
};

/// Convex decomposition of a density matrix into pure components.
struct Decomposition {
    std::vector<double> weights;
    std::vector<QuantumState> components;

    Matrix reconstruct() const;
    int dim() const { return components.empty() ? 0 : components.front().dim(); }
};

/// Validates weights (non-negative, summing to 1 within 1e-10) and components.
Decomposition make_decomposition(std::vector<double> weights,
                                 std::vector<QuantumState> components);

/// Eigendecomposition of a density matrix as a Decomposition (eigenvalues
/// below 1e-14 dropped).
Decomposition eigen_decomposition(const QuantumState& state);

/// Eigenvalues minimizing the rms error of a projective basis measurement;
/// equals weak_values for pure states.
std::vector<double> optimal_eigenvalues(const std::vector<Vector>& basis, const Observable& obs,
                                        const QuantumState& state);

/// Brute-force oracle: Haar-random projective bases with rms-optimal
/// eigenvalues. Every emitted point satisfies all implemented relations
/// within tolerance; deterministic per seed.
std::vector<FrontierPoint> random_scan(const Observable& A, const Observable& B,
                                       const QuantumState& state, int nSamples,
                                       std::uint64_t seed);

/// |eps^2(rho) - sum_i p_i eps^2(psi_i)| for both observables; zero to
/// rounding for any scheme, since squared errors are linear in the state.
std::pair<double, double> mixed_linearity_check(const JointScheme& scheme, const Observable& A,
                                                const Observable& B,
                                                const Decomposition& decomposition);

/// Numerical lower envelope for the mixed-state errors obtained by
/// combining each component's tight frontier; a necessary bound, not
/// claimed tight in general. One point per lambda weight in [0, 1];
/// phiGridSize controls both the per-component sweep and the lambda grid.
std::vector<FrontierPoint> mixed_strengthen(const Observable& A, const Observable& B,
                                            const Decomposition& decomposition, int phiGridSize);

/// The worked fully-mixed-qubit example with sigma_x, sigma_y targets.
struct QubitExampleReport {
    double stdA_rho = 0, stdB_rho = 0, cAB_rho = 0; // moments on rho = I/2
    double cAB_ket0 = 0, cAB_ket1 = 0;              // on the basis states
    double strengthenedBoundRhs = 0;                // epsA^2 + epsB^2 >= this
    struct FamilyPoint {
        double phi = 0, epsASq = 0, epsBSq = 0;
    };
    std::vector<FamilyPoint> saturatingFamily; // estA = cos(phi) S, estB = sin(phi) S
    double familyMaxSumDeviation = 0;          // max |epsA^2 + epsB^2 - 1| over the family
    double envelopeMaxDeviation = 0;           // mixed_strengthen vs the unit circle
    double purificationEpsA = 0, purificationEpsB = 0; // Bell-operator estimators on |Phi+>
    double purificationCommNorm = 0;
};

QubitExampleReport qubit_example_report();

} // namespace etr
