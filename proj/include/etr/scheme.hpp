#pragma once

#include <optional>
#include <utility>

#include "etr/qcore.hpp"

namespace etr {

/// Commuting estimator pair on system (x) ancilla, approximating a joint
/// measurement of two incompatible targets. The measurement-disturbance
/// scenario is the same object with epsB read as the disturbance.
struct JointScheme {
    int sysDim = 0;
    int ancDim = 1;
    std::optional<QuantumState> ancilla; // pure; absent when ancDim == 1
    Observable estA;
    Observable estB;
};

/// Error and moment statistics of a scheme against targets on a state.
struct SchemeStats {
    double epsA = 0;     // rms error of estA against A
    double epsB = 0;
    double stdEstA = 0;  // deviation of estA on the extended state
    double stdEstB = 0;
    double biasA = 0;    // <estA> - <A>
    double biasB = 0;
    double meanEstA = 0;
    double meanEstB = 0;
};

/// Validates dimensions and commutation of the estimator pair.
JointScheme build_scheme(const Observable& estA, const Observable& estB,
                         const std::optional<QuantumState>& ancilla = std::nullopt);

/// Frobenius norm of [estA, estB].
double commutator_norm(const Observable& estA, const Observable& estB);

SchemeStats scheme_stats(const JointScheme& scheme, const Observable& A, const Observable& B,
                         const QuantumState& state);

/// Residuals of the identity eps^2 - delta^2 = dA^2 + dEst^2 - 2 dA Re<A0 est>,
/// for both observables. Zero (to rounding) for any valid scheme.
std::pair<double, double> consistency_identity(const SchemeStats& stats, const FixedParams& fixed,
                                               const JointScheme& scheme, const Observable& A,
                                               const Observable& B, const QuantumState& state);

enum class Target { A, B };

/// Bounds [(dA - dEst)^2 + delta^2, (dA + dEst)^2 + delta^2] containing
/// eps^2 for any real scheme with the given deviation and bias.
std::pair<double, double> variance_triangle(const FixedParams& fixed, double stdEst, double bias,
                                            Target which);

/// Bounds on eps^2/2 for +-1-valued target and estimator with the given
/// estimator mean: 1 - <A><est> -+ dA sqrt(1 - <est>^2), clamped to [0, 2].
std::pair<double, double> pm1_bounds(const FixedParams& fixed, double meanEst, Target which);

/// Moment-level check that a (mean, std) pair is consistent with a
/// +-1-valued observable: std^2 = 1 - mean^2 and |mean| <= 1.
bool pm1_consistent(double mean, double std);

} // namespace etr
