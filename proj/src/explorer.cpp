#include "etr/explorer.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace etr {

std::string to_string(PointSource source) {
    switch (source) {
    case PointSource::CONSTRUCTED: return "CONSTRUCTED";
    case PointSource::RANDOM_SCAN: return "RANDOM_SCAN";
    case PointSource::MIXED_ENVELOPE: return "MIXED_ENVELOPE";
    }
    return "?";
}

Matrix Decomposition::reconstruct() const {
    const int d = dim();
    Matrix rho = Matrix::Zero(d, d);
    for (size_t i = 0; i < weights.size(); ++i) {
        const Vector& psi = components[i].amplitudes();
        rho += weights[i] * (psi * psi.adjoint());
    }
    return rho;
}

Decomposition make_decomposition(std::vector<double> weights,
                                 std::vector<QuantumState> components) {
    if (weights.empty() || weights.size() != components.size())
        throw ValidationError("decomposition needs matching, non-empty weights and components");
    double sum = 0;
    for (double w : weights) {
        if (w < 0) throw ValidationError("decomposition weights must be non-negative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw ValidationError("decomposition weights must sum to 1");
    const int d = components.front().dim();
    for (const QuantumState& c : components) {
        if (!c.is_pure()) throw ValidationError("decomposition components must be pure");
        if (c.dim() != d) throw DimensionMismatch("decomposition components must share a dimension");
    }
    Decomposition out;
    out.weights = std::move(weights);
    out.components = std::move(components);
    return out;
}

Decomposition eigen_decomposition(const QuantumState& state) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(state.density_matrix());
    std::vector<double> weights;
    std::vector<QuantumState> components;
    for (int i = 0; i < state.dim(); ++i) {
        const double w = es.eigenvalues()(i);
        if (w <= 1e-14) continue;
        weights.push_back(w);
        components.push_back(make_state(Vector(es.eigenvectors().col(i))));
    }
    // Rescale away the rounding of the eigenvalue sum.
    double sum = 0;
    for (double w : weights) sum += w;
    for (double& w : weights) w /= sum;
    return make_decomposition(std::move(weights), std::move(components));
}

std::vector<double> optimal_eigenvalues(const std::vector<Vector>& basis, const Observable& obs,
                                        const QuantumState& state) {
    const double mean = expectation(obs, state);
    const Matrix rho = state.density_matrix();
    const Matrix obsRho = obs.matrix() * rho;
    std::vector<double> out;
    out.reserve(basis.size());
    for (const Vector& m : basis) {
        const double weight = (m.dot(rho * m)).real();
        if (weight <= tol::overlap_floor * tol::overlap_floor) {
            out.push_back(mean);
        } else {
            out.push_back((m.dot(obsRho * m)).real() / weight);
        }
    }
    return out;
}

namespace {

Observable projective_observable(const std::vector<Vector>& basis,
                                 const std::vector<double>& values) {
    const int d = static_cast<int>(basis.front().size());
    Matrix m = Matrix::Zero(d, d);
    for (size_t k = 0; k < basis.size(); ++k)
        m += values[k] * (basis[k] * basis[k].adjoint());
    return validate_observable((m + m.adjoint()) / 2.0);
}

double min_relation_residual(const FixedParams& fixed, const SchemeStats& stats) {
    double worst = std::numeric_limits<double>::infinity();
    for (const RelationVerdict& v : evaluate_all_relations(fixed, stats))
        worst = std::min(worst, v.residual);
    return worst;
}

} // namespace

std::vector<FrontierPoint> random_scan(const Observable& A, const Observable& B,
                                       const QuantumState& state, int nSamples,
                                       std::uint64_t seed) {
    if (nSamples < 1) throw ValidationError("random_scan needs at least one sample");
    const FixedParams fixed = fixed_params(A, B, state);
    const int d = state.dim();
    std::mt19937_64 seq(seed);

    std::vector<FrontierPoint> points;
    points.reserve(nSamples);
    for (int i = 0; i < nSamples; ++i) {
        const Matrix u = haar_random_unitary(d, seq());
        std::vector<Vector> basis;
        basis.reserve(d);
        for (int k = 0; k < d; ++k) basis.push_back(u.col(k));

        const Observable estA = projective_observable(basis, optimal_eigenvalues(basis, A, state));
        const Observable estB = projective_observable(basis, optimal_eigenvalues(basis, B, state));
        const JointScheme scheme = build_scheme(estA, estB);
        const SchemeStats stats = scheme_stats(scheme, A, B, state);

        FrontierPoint p;
        p.epsA = stats.epsA;
        p.epsB = stats.epsB;
        p.source = PointSource::RANDOM_SCAN;
        p.violation = min_relation_residual(fixed, stats);
        points.push_back(p);
    }
    return points;
}

std::pair<double, double> mixed_linearity_check(const JointScheme& scheme, const Observable& A,
                                                const Observable& B,
                                                const Decomposition& decomposition) {
    if (decomposition.dim() != scheme.sysDim)
        throw DimensionMismatch("decomposition dimension must match the scheme system dimension");
    const QuantumState rho = make_state(decomposition.reconstruct());
    const SchemeStats whole = scheme_stats(scheme, A, B, rho);
    double sumA = 0, sumB = 0;
    for (size_t i = 0; i < decomposition.weights.size(); ++i) {
        const SchemeStats part = scheme_stats(scheme, A, B, decomposition.components[i]);
        sumA += decomposition.weights[i] * part.epsA * part.epsA;
        sumB += decomposition.weights[i] * part.epsB * part.epsB;
    }
    return {std::abs(whole.epsA * whole.epsA - sumA), std::abs(whole.epsB * whole.epsB - sumB)};
}

std::vector<FrontierPoint> mixed_strengthen(const Observable& A, const Observable& B,
                                            const Decomposition& decomposition, int phiGridSize) {
    if (phiGridSize < 3) throw ValidationError("mixed_strengthen needs a phi grid of at least 3");

    // Tight per-component frontier samples (epsA^2, epsB^2).
    struct ComponentCurve {
        std::vector<double> epsASq, epsBSq;
    };
    std::vector<ComponentCurve> curves;
    for (const QuantumState& psi : decomposition.components) {
        const FixedParams fixed = fixed_params(A, B, psi);
        const bool secondBranch = fixed.coplanar && std::cos(fixed.phi) < 0;
        const double angle = fixed.coplanar ? fixed.phi : fixed.phiPrime;
        const auto [lo, hi] = saturating_interval(angle, secondBranch);
        ComponentCurve curve;
        for (int j = 0; j < phiGridSize; ++j) {
            const double phi = lo + (hi - lo) * j / (phiGridSize - 1);
            const auto [uA, uB] = saturating_u(phi, angle, secondBranch);
            curve.epsASq.push_back(std::pow(fixed.stdA * uA, 2));
            curve.epsBSq.push_back(std::pow(fixed.stdB * uB, 2));
        }
        curves.push_back(std::move(curve));
    }

    // The weighted-sum objective decouples across components: minimize per
    // component over its own frontier, then mix with the decomposition weights.
    std::vector<FrontierPoint> envelope;
    envelope.reserve(phiGridSize);
    for (int l = 0; l < phiGridSize; ++l) {
        const double lambda = static_cast<double>(l) / (phiGridSize - 1);
        double mixA = 0, mixB = 0;
        for (size_t i = 0; i < curves.size(); ++i) {
            const ComponentCurve& curve = curves[i];
            int best = 0;
            double bestVal = std::numeric_limits<double>::infinity();
            for (int j = 0; j < phiGridSize; ++j) {
                const double val = lambda * curve.epsASq[j] + (1.0 - lambda) * curve.epsBSq[j];
                if (val < bestVal) {
                    bestVal = val;
                    best = j;
                }
            }
            mixA += decomposition.weights[i] * curve.epsASq[best];
            mixB += decomposition.weights[i] * curve.epsBSq[best];
        }
        FrontierPoint p;
        p.epsA = std::sqrt(mixA);
        p.epsB = std::sqrt(mixB);
        p.source = PointSource::MIXED_ENVELOPE;
        p.phi_param = lambda;
        p.violation = 0;
        envelope.push_back(p);
    }
    return envelope;
}

QubitExampleReport qubit_example_report() {
    QubitExampleReport report;
    const Observable A = pauli_x();
    const Observable B = pauli_y();
    const QuantumState rho = make_state(Matrix(Matrix::Identity(2, 2) / 2.0));
    Vector e0(2), e1(2);
    e0 << 1, 0;
    e1 << 0, 1;
    const QuantumState ket0 = make_state(e0);
    const QuantumState ket1 = make_state(e1);

    report.stdA_rho = std_dev(A, rho);
    report.stdB_rho = std_dev(B, rho);
    report.cAB_rho = fixed_params(A, B, rho).cAB;
    report.cAB_ket0 = fixed_params(A, B, ket0).cAB;
    report.cAB_ket1 = fixed_params(A, B, ket1).cAB;
    report.strengthenedBoundRhs = 1.0;

    for (double phi : {0.0, M_PI / 6, M_PI / 4, M_PI / 3, M_PI / 2}) {
        const Matrix axis = std::cos(phi) * A.matrix() + std::sin(phi) * B.matrix();
        const Observable estA = validate_observable(Matrix(std::cos(phi) * axis));
        const Observable estB = validate_observable(Matrix(std::sin(phi) * axis));
        const SchemeStats stats = scheme_stats(build_scheme(estA, estB), A, B, rho);
        QubitExampleReport::FamilyPoint p;
        p.phi = phi;
        p.epsASq = stats.epsA * stats.epsA;
        p.epsBSq = stats.epsB * stats.epsB;
        report.saturatingFamily.push_back(p);
        report.familyMaxSumDeviation =
            std::max(report.familyMaxSumDeviation, std::abs(p.epsASq + p.epsBSq - 1.0));
    }

    const Decomposition decomp = make_decomposition({0.5, 0.5}, {ket0, ket1});
    double envDev = 0;
    for (const FrontierPoint& p : mixed_strengthen(A, B, decomp, 721))
        envDev = std::max(envDev, std::abs(p.epsA * p.epsA + p.epsB * p.epsB - 1.0));
    report.envelopeMaxDeviation = envDev;

    // Bell-operator estimators reach zero error on the purification |Phi+>.
    const double s = 1.0 / std::sqrt(2.0);
    Vector phiP(4), psiP(4), psiM(4);
    phiP << s, 0, 0, s;
    psiP << 0, s, s, 0;
    psiM << 0, s, -s, 0;
    const Matrix estA4 = phiP * psiP.adjoint() + psiP * phiP.adjoint() + psiM * psiM.adjoint();
    const Matrix estB4 = Complex(0, 1) * (phiP * psiM.adjoint() - psiM * phiP.adjoint() +
                                          psiP * psiM.adjoint() - psiM * psiP.adjoint());
    const Observable bellA = validate_observable(estA4);
    const Observable bellB = validate_observable(estB4);
    const Matrix id2 = Matrix::Identity(2, 2);
    const Observable extA = validate_observable(kron(A.matrix(), id2));
    const Observable extB = validate_observable(kron(B.matrix(), id2));
    const SchemeStats bellStats =
        scheme_stats(build_scheme(bellA, bellB), extA, extB, make_state(phiP));
    report.purificationEpsA = bellStats.epsA;
    report.purificationEpsB = bellStats.epsB;
    report.purificationCommNorm = commutator_norm(bellA, bellB);
    return report;
}

} // namespace etr
