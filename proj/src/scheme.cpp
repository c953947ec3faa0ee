#include "etr/scheme.hpp"

#include <cmath>

namespace etr {

namespace {

/// state (x) ancilla as a single QuantumState on sysDim * ancDim.
QuantumState extended_state(const JointScheme& scheme, const QuantumState& state) {
    if (!scheme.ancilla) return state;
    const Vector& xi = scheme.ancilla->amplitudes();
    if (state.is_pure()) return make_state(kron(state.amplitudes(), xi));
    return make_state(Matrix(kron(state.density_matrix(), Matrix(xi * xi.adjoint()))));
}

Matrix extend(const Matrix& m, int ancDim) {
    if (ancDim == 1) return m;
    return kron(m, Matrix::Identity(ancDim, ancDim));
}

} // namespace

double commutator_norm(const Observable& estA, const Observable& estB) {
    return (estA.matrix() * estB.matrix() - estB.matrix() * estA.matrix()).norm();
}

JointScheme build_scheme(const Observable& estA, const Observable& estB,
                         const std::optional<QuantumState>& ancilla) {
    if (estA.dim() != estB.dim())
        throw DimensionMismatch("estimator dimensions differ");
    JointScheme scheme;
    scheme.ancDim = ancilla ? ancilla->dim() : 1;
    if (ancilla && !ancilla->is_pure())
        throw ValidationError("ancilla must be a pure state (purify mixed ancillas first)");
    if (estA.dim() % scheme.ancDim != 0)
        throw DimensionMismatch("estimator dimension is not a multiple of the ancilla dimension");
    scheme.sysDim = estA.dim() / scheme.ancDim;
    if (scheme.sysDim < 2)
        throw DimensionMismatch("system dimension must be at least 2");

    const double comm = commutator_norm(estA, estB);
    const double scale = estA.matrix().norm() * estB.matrix().norm() + 1.0;
    if (comm > tol::commutator_rel * scale) throw NonCommuting(comm);

    scheme.ancilla = ancilla;
    scheme.estA = estA;
    scheme.estB = estB;
    return scheme;
}

SchemeStats scheme_stats(const JointScheme& scheme, const Observable& A, const Observable& B,
                         const QuantumState& state) {
    if (A.dim() != scheme.sysDim || B.dim() != scheme.sysDim || state.dim() != scheme.sysDim)
        throw DimensionMismatch("target/state dimensions must equal the scheme system dimension");

    const QuantumState ext = extended_state(scheme, state);
    const Matrix Ae = extend(A.matrix(), scheme.ancDim);
    const Matrix Be = extend(B.matrix(), scheme.ancDim);
    const Matrix& Ma = scheme.estA.matrix();
    const Matrix& Mb = scheme.estB.matrix();

    const int n = scheme.sysDim * scheme.ancDim;
    auto std_of = [&](const Matrix& m) {
        const double mean = raw_expectation(m, ext).real();
        return operator_rms(m - mean * Matrix::Identity(n, n), ext);
    };

    SchemeStats s;
    s.epsA = operator_rms(Ma - Ae, ext);
    s.epsB = operator_rms(Mb - Be, ext);
    s.stdEstA = std_of(Ma);
    s.stdEstB = std_of(Mb);
    s.meanEstA = raw_expectation(Ma, ext).real();
    s.meanEstB = raw_expectation(Mb, ext).real();
    s.biasA = s.meanEstA - raw_expectation(Ae, ext).real();
    s.biasB = s.meanEstB - raw_expectation(Be, ext).real();
    return s;
}

std::pair<double, double> consistency_identity(const SchemeStats& stats, const FixedParams& fixed,
                                               const JointScheme& scheme, const Observable& A,
                                               const Observable& B, const QuantumState& state) {
    const QuantumState ext = extended_state(scheme, state);
    const int d = A.dim() * scheme.ancDim;

    auto residual = [&](const Observable& target, double mean, double std, double eps, double bias,
                        double stdEst, const Observable& est) {
        const Matrix reduced =
            (extend(target.matrix(), scheme.ancDim) - mean * Matrix::Identity(d, d)) / std;
        const double corr = raw_expectation(reduced * est.matrix(), ext).real();
        const double lhs = eps * eps - bias * bias;
        const double rhs = std * std + stdEst * stdEst - 2.0 * std * corr;
        return std::abs(lhs - rhs);
    };

    return {residual(A, fixed.meanA, fixed.stdA, stats.epsA, stats.biasA, stats.stdEstA,
                     scheme.estA),
            residual(B, fixed.meanB, fixed.stdB, stats.epsB, stats.biasB, stats.stdEstB,
                     scheme.estB)};
}

std::pair<double, double> variance_triangle(const FixedParams& fixed, double stdEst, double bias,
                                            Target which) {
    const double std = which == Target::A ? fixed.stdA : fixed.stdB;
    const double lo = (std - stdEst) * (std - stdEst) + bias * bias;
    const double hi = (std + stdEst) * (std + stdEst) + bias * bias;
    return {lo, hi};
}

std::pair<double, double> pm1_bounds(const FixedParams& fixed, double meanEst, Target which) {
    const double mean = which == Target::A ? fixed.meanA : fixed.meanB;
    const double std = which == Target::A ? fixed.stdA : fixed.stdB;
    if (!pm1_consistent(mean, std))
        throw NotPm1Valued("target moments are inconsistent with a +-1-valued observable");
    if (std::abs(meanEst) > 1.0 + tol::hermitian)
        throw NotPm1Valued("estimator mean exceeds 1 in magnitude");
    const double spread = std * std::sqrt(std::max(1.0 - meanEst * meanEst, 0.0));
    const double center = 1.0 - mean * meanEst;
    return {std::clamp(center - spread, 0.0, 2.0), std::clamp(center + spread, 0.0, 2.0)};
}

bool pm1_consistent(double mean, double std) {
    return std::abs(mean) <= 1.0 + 1e-10 && std::abs(std * std - (1.0 - mean * mean)) <= 1e-10;
}

} // namespace etr
