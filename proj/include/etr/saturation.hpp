#pragma once

#include "etr/relations.hpp"

namespace etr {

enum class Side { LOWER, UPPER };
enum class BasisBranch { TWO_D, THREE_D };

std::string to_string(Side side);

/// Request for a scheme saturating one relation at one sweep angle.
/// F needs all four targets, G the deviations, H the biases; PNAS, FBIS
/// and PRL need none. Only F/FBIS/PRL distinguish sides.
struct SaturationSpec {
    RelationKind kind = RelationKind::PNAS;
    double phi_param = 0;
    Side side = Side::LOWER;
    std::optional<double> targetStdEstA;
    std::optional<double> targetStdEstB;
    std::optional<double> targetBiasA;
    std::optional<double> targetBiasB;
    double theta = M_PI / 4;  // 2-D construction angle
    double theta1 = M_PI / 4; // 3-D construction angles
    double theta2 = M_PI / 4;
    double theta3 = 0;
    std::optional<BasisBranch> forceBranch; // testing hook; defaults to the coplanarity branch
};

struct ThreeDIntermediates {
    Complex gamma1, gamma2;
    double Fp = 0, Fm = 0, Gp = 0, Gm = 0;
    double thetaA = 0, thetaB = 0;
};

/// Orthonormal basis whose leading vectors span {psi, A0 psi, B0 psi},
/// completed to the full space when the dimension exceeds the span.
struct ConstructionBasis {
    std::vector<Vector> vectors;
    BasisBranch branch = BasisBranch::TWO_D;
    int spanSize = 2;
    double angle = 0;          // phi for TWO_D, phiPrime for THREE_D
    bool secondBranch = false; // TWO_D sweep over the cos(phi) <= 0 interval
    std::optional<ThreeDIntermediates> inter;
};

struct SaturationResult {
    JointScheme scheme;
    SchemeStats stats;
    RelationVerdict verdict;
    double commNorm = 0;
    double maxTargetErr = 0;
    std::optional<std::string> warning; // set when tightness is not guaranteed
};

ConstructionBasis build_basis(const Observable& A, const Observable& B, const QuantumState& state,
                              const FixedParams& fixed, const SaturationSpec& spec);

/// Per-relation eigenvalue recipes on the construction basis. tauA/tauB
/// select the lower or upper error branch for F/FBIS/PRL; G/H/PNAS force
/// the saturating sign internally.
std::pair<std::vector<double>, std::vector<double>> eigenvalues_for(const SaturationSpec& spec,
                                                                    const ConstructionBasis& basis,
                                                                    const FixedParams& fixed,
                                                                    int tauA, int tauB);

/// Re[<m_k|obs|psi> / <m_k|psi>] per basis vector; defaults to <obs> when
/// the overlap vanishes.
std::vector<double> weak_values(const ConstructionBasis& basis, const Observable& obs,
                                const QuantumState& state);

/// Builds a commuting estimator pair saturating the requested relation at
/// spec.phi_param; lives on the system space, no ancilla.
SaturationResult saturating_scheme(const Observable& A, const Observable& B,
                                   const QuantumState& state, const SaturationSpec& spec,
                                   double tol = tol::verdict);

/// Diagonal observable sum_k values[k] |m_k><m_k| over a basis.
Observable observable_from_basis(const ConstructionBasis& basis,
                                 const std::vector<double>& values);

} // namespace etr
