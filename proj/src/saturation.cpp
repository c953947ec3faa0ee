#include "etr/saturation.hpp"

#include <cmath>

namespace etr {

namespace {

double sign_pos(double x) { return x >= 0 ? 1.0 : -1.0; }

/// Completes a partial orthonormal set to a full basis of the space by
/// Gram-Schmidt over the identity columns.
void complete_basis(std::vector<Vector>& vecs, int dim) {
    for (int col = 0; col < dim && static_cast<int>(vecs.size()) < dim; ++col) {
        Vector candidate = Vector::Zero(dim);
        candidate(col) = 1.0;
        for (const Vector& v : vecs) candidate -= v * v.dot(candidate);
        const double norm = candidate.norm();
        if (norm < 1e-8) continue; // candidate inside the current span
        // One re-orthogonalization pass keeps the set orthonormal to rounding.
        for (const Vector& v : vecs) candidate -= v * v.dot(candidate);
        vecs.push_back(candidate / candidate.norm());
    }
}

ConstructionBasis build_basis_2d(const Observable& A, const QuantumState& state,
                                 const FixedParams& fixed, const SaturationSpec& spec) {
    const int d = state.dim();
    const double theta = spec.theta;
    const double ct = std::cos(theta), st = std::sin(theta);
    if (std::abs(ct * st) < 1e-12)
        throw SingularAngle("2-D construction requires cos(theta) sin(theta) != 0");

    const Vector& psi = state.amplitudes();
    const Matrix a0 = (A.matrix() - fixed.meanA * Matrix::Identity(d, d)) / fixed.stdA;
    Vector v2 = std::exp(Complex(0, fixed.phi / 2.0)) * (a0 * psi);
    v2 /= v2.norm();

    const Complex phase = std::exp(Complex(0, spec.phi_param / 2.0));
    ConstructionBasis basis;
    basis.branch = BasisBranch::TWO_D;
    basis.spanSize = 2;
    basis.angle = fixed.phi;
    basis.secondBranch = std::cos(fixed.phi) < 0;
    basis.vectors.push_back(ct * psi + phase * st * v2);
    basis.vectors.push_back(st * psi - phase * ct * v2);
    complete_basis(basis.vectors, d);
    return basis;
}

ConstructionBasis build_basis_3d(const Observable& A, const Observable& B,
                                 const QuantumState& state, const FixedParams& fixed,
                                 const SaturationSpec& spec) {
    const int d = state.dim();
    const double c1 = std::cos(spec.theta1), s1 = std::sin(spec.theta1);
    const double c2 = std::cos(spec.theta2), s2 = std::sin(spec.theta2);
    const double c3 = std::cos(spec.theta3), s3 = std::sin(spec.theta3);
    if (std::abs(c1 * s1 * c2 * s2) < 1e-12)
        throw SingularAngle("3-D construction requires cos/sin of theta1, theta2 nonzero");
    if (!fixed.q)
        throw BranchMismatch("3-D construction undefined at |tildeC| = 1");

    const Vector& psi = state.amplitudes();
    const Matrix a0 = (A.matrix() - fixed.meanA * Matrix::Identity(d, d)) / fixed.stdA;
    const Matrix b0 = (B.matrix() - fixed.meanB * Matrix::Identity(d, d)) / fixed.stdB;
    const Complex ep = std::exp(Complex(0, fixed.phi / 2.0));
    const Vector a0psi = ep * (a0 * psi);
    const Vector b0psi = std::conj(ep) * (b0 * psi);

    Vector v2 = (a0psi + b0psi) / std::sqrt(2.0 + 2.0 * fixed.r);
    Vector v3 = (a0psi - b0psi) / std::sqrt(2.0 - 2.0 * fixed.r);
    v2 /= v2.norm();
    v3 /= v3.norm();

    const double q = *fixed.q;
    const double sgn = sign_pos(std::sin(fixed.phi));
    const double wp = std::sqrt((1.0 + q) / 2.0), wm = std::sqrt(std::max(1.0 - q, 0.0) / 2.0);
    const Complex eph = std::exp(Complex(0, spec.phi_param / 2.0));
    const Complex g1 = wp * c3 * eph - Complex(0, sgn) * wm * s3 * std::conj(eph);
    const Complex g2 = wp * s3 * std::conj(eph) - Complex(0, sgn) * wm * c3 * eph;

    ConstructionBasis basis;
    basis.branch = BasisBranch::THREE_D;
    basis.spanSize = 3;
    basis.angle = fixed.phiPrime;
    basis.vectors.push_back(c1 * psi - s1 * g1 * v2 - s1 * g2 * v3);
    basis.vectors.push_back(s1 * c2 * psi + (c1 * c2 * g1 + s2 * std::conj(g2)) * v2 +
                            (c1 * c2 * g2 - s2 * std::conj(g1)) * v3);
    basis.vectors.push_back(s1 * s2 * psi + (c1 * s2 * g1 - c2 * std::conj(g2)) * v2 +
                            (c1 * s2 * g2 + c2 * std::conj(g1)) * v3);
    complete_basis(basis.vectors, d);

    ThreeDIntermediates inter;
    inter.gamma1 = g1;
    inter.gamma2 = g2;
    const double rp = std::sqrt((1.0 + fixed.r) / 2.0), rm = std::sqrt((1.0 - fixed.r) / 2.0);
    const double phi = fixed.phi, vp = spec.phi_param;
    inter.Fp = wp * rp * std::cos((vp + phi) / 2.0) + sgn * wm * rm * std::sin((vp + phi) / 2.0);
    inter.Fm = wp * rm * std::cos((vp - phi) / 2.0) - sgn * wm * rp * std::sin((vp - phi) / 2.0);
    inter.Gp = wp * rp * std::cos((vp - phi) / 2.0) - sgn * wm * rm * std::sin((vp - phi) / 2.0);
    inter.Gm = -wp * rm * std::cos((vp + phi) / 2.0) - sgn * wm * rp * std::sin((vp + phi) / 2.0);

    auto extract_angle = [&](double plusComp, double minusComp, double cosHalf) {
        if (std::abs(cosHalf) < 1e-15) return 0.0;
        if (cosHalf > 0) return std::atan2(minusComp, plusComp);
        return std::atan2(-minusComp, -plusComp);
    };
    const double cosP = std::cos((vp + fixed.phiPrime) / 2.0);
    const double cosM = std::cos((vp - fixed.phiPrime) / 2.0);
    inter.thetaA = extract_angle(c3 * inter.Fp + s3 * inter.Fm, s3 * inter.Fp - c3 * inter.Fm, cosP);
    inter.thetaB = extract_angle(c3 * inter.Gp + s3 * inter.Gm, s3 * inter.Gp - c3 * inter.Gm, cosM);
    basis.inter = inter;
    return basis;
}

} // namespace

std::string to_string(Side side) { return side == Side::LOWER ? "LOWER" : "UPPER"; }

ConstructionBasis build_basis(const Observable& A, const Observable& B, const QuantumState& state,
                              const FixedParams& fixed, const SaturationSpec& spec) {
    if (!state.is_pure())
        throw ValidationError("saturating constructions require a pure state");
    BasisBranch branch = fixed.coplanar ? BasisBranch::TWO_D : BasisBranch::THREE_D;
    if (spec.forceBranch) {
        if (*spec.forceBranch == BasisBranch::TWO_D && !fixed.coplanar)
            throw BranchMismatch("2-D construction requires |<A0 B0>| = 1");
        if (*spec.forceBranch == BasisBranch::THREE_D && fixed.coplanar)
            throw BranchMismatch("3-D construction requires |<A0 B0>| < 1");
        branch = *spec.forceBranch;
    }
    if (branch == BasisBranch::TWO_D) return build_basis_2d(A, state, fixed, spec);
    return build_basis_3d(A, B, state, fixed, spec);
}

std::pair<std::vector<double>, std::vector<double>> eigenvalues_for(const SaturationSpec& spec,
                                                                    const ConstructionBasis& basis,
                                                                    const FixedParams& fixed,
                                                                    int tauA, int tauB) {
    const int d = static_cast<int>(basis.vectors.size());
    const double cosP = std::cos((spec.phi_param + basis.angle) / 2.0);
    const double cosM = std::cos((spec.phi_param - basis.angle) / 2.0);

    const bool sameSpectrum =
        spec.kind == RelationKind::FBIS || spec.kind == RelationKind::PRL;
    auto need = [&](const std::optional<double>& v, const char* what) {
        if (!v) throw MissingTarget(std::string("spec lacks required target ") + what);
        return *v;
    };

    // Per-side deviation/bias pairs fed into the shared recipe: the signed
    // deviation tau * dEst and the bias shift.
    double devA = 0, devB = 0, biasA = 0, biasB = 0;
    switch (spec.kind) {
    case RelationKind::F:
        devA = tauA * need(spec.targetStdEstA, "stdEstA");
        devB = tauB * need(spec.targetStdEstB, "stdEstB");
        biasA = need(spec.targetBiasA, "biasA");
        biasB = need(spec.targetBiasB, "biasB");
        break;
    case RelationKind::G:
        devA = sign_pos(cosP) * need(spec.targetStdEstA, "stdEstA");
        devB = sign_pos(cosM) * need(spec.targetStdEstB, "stdEstB");
        break;
    case RelationKind::H:
        devA = fixed.stdA * cosP;
        devB = fixed.stdB * cosM;
        biasA = need(spec.targetBiasA, "biasA");
        biasB = need(spec.targetBiasB, "biasB");
        break;
    case RelationKind::PNAS:
        devA = fixed.stdA * cosP;
        devB = fixed.stdB * cosM;
        break;
    case RelationKind::FBIS:
    case RelationKind::PRL:
        break;
    default:
        throw ValidationError("no saturating construction for relation " + to_string(spec.kind));
    }

    std::vector<double> alphas(d, fixed.meanA), betas(d, fixed.meanB);
    if (sameSpectrum) {
        // +-1 eigenvalues with a balanced first weight; completion vectors
        // carry -tau to keep the estimator +-1-valued.
        std::fill(alphas.begin(), alphas.end(), -static_cast<double>(tauA));
        std::fill(betas.begin(), betas.end(), -static_cast<double>(tauB));
        alphas[0] = tauA;
        betas[0] = tauB;
        if (basis.branch == BasisBranch::TWO_D) {
            alphas[1] = -tauA;
            betas[1] = -tauB;
        }
        return {alphas, betas};
    }

    if (basis.branch == BasisBranch::TWO_D) {
        const double ct = std::cos(spec.theta), st = std::sin(spec.theta);
        alphas[0] = fixed.meanA + biasA + (st / ct) * devA;
        alphas[1] = fixed.meanA + biasA - (ct / st) * devA;
        betas[0] = fixed.meanB + biasB + (st / ct) * devB;
        betas[1] = fixed.meanB + biasB - (ct / st) * devB;
    } else {
        const auto& inter = *basis.inter;
        const double c1 = std::cos(spec.theta1), s1 = std::sin(spec.theta1);
        const double c2 = std::cos(spec.theta2), s2 = std::sin(spec.theta2);
        auto fill = [&](std::vector<double>& out, double mean, double bias, double dev,
                        double thetaAngle) {
            const double ca = std::cos(thetaAngle), sa = std::sin(thetaAngle);
            out[0] = mean + bias - (s1 * ca / c1) * dev;
            out[1] = mean + bias + ((c1 * c2 * ca + s2 * sa) / (s1 * c2)) * dev;
            out[2] = mean + bias + ((c1 * s2 * ca - c2 * sa) / (s1 * s2)) * dev;
        };
        fill(alphas, fixed.meanA, biasA, devA, inter.thetaA);
        fill(betas, fixed.meanB, biasB, devB, inter.thetaB);
    }
    return {alphas, betas};
}

std::vector<double> weak_values(const ConstructionBasis& basis, const Observable& obs,
                                const QuantumState& state) {
    const double mean = expectation(obs, state);
    const Vector& psi = state.amplitudes();
    std::vector<double> out;
    out.reserve(basis.vectors.size());
    for (const Vector& m : basis.vectors) {
        const Complex overlap = m.dot(psi);
        if (std::abs(overlap) <= tol::overlap_floor) {
            out.push_back(mean);
        } else {
            out.push_back((m.dot(obs.matrix() * psi) / overlap).real());
        }
    }
    return out;
}

Observable observable_from_basis(const ConstructionBasis& basis,
                                 const std::vector<double>& values) {
    const int d = static_cast<int>(basis.vectors.front().size());
    Matrix m = Matrix::Zero(d, d);
    for (size_t k = 0; k < basis.vectors.size(); ++k)
        m += values[k] * (basis.vectors[k] * basis.vectors[k].adjoint());
    // Symmetrize away the rounding left by the projector sums.
    return validate_observable((m + m.adjoint()) / 2.0);
}

SaturationResult saturating_scheme(const Observable& A, const Observable& B,
                                   const QuantumState& state, const SaturationSpec& spec,
                                   double tol) {
    if (!state.is_pure())
        throw ValidationError("saturating constructions require a pure state");
    const FixedParams fixed = fixed_params(A, B, state);
    const bool secondBranch = fixed.coplanar && std::cos(fixed.phi) < 0;
    const double angle = fixed.coplanar ? fixed.phi : fixed.phiPrime;
    saturating_u(spec.phi_param, angle, secondBranch); // admissible interval check

    const bool twoSided = spec.kind == RelationKind::F || spec.kind == RelationKind::FBIS ||
                          spec.kind == RelationKind::PRL;
    if (!twoSided && spec.side == Side::UPPER)
        throw UnsupportedSide(to_string(spec.kind) + " imposes no upper bound on the errors");

    SaturationSpec local = spec;
    if (spec.kind == RelationKind::FBIS || spec.kind == RelationKind::PRL) {
        local.theta = M_PI / 4; // balanced overlaps give <est> = 0
        local.theta1 = M_PI / 4;
    }

    const ConstructionBasis basis = build_basis(A, B, state, fixed, local);
    const double cosP = std::cos((spec.phi_param + basis.angle) / 2.0);
    const double cosM = std::cos((spec.phi_param - basis.angle) / 2.0);
    const double flip = spec.side == Side::UPPER ? -1.0 : 1.0;
    const int tauA = static_cast<int>(flip * sign_pos(cosP));
    const int tauB = static_cast<int>(flip * sign_pos(cosM));

    const auto [alphas, betas] = eigenvalues_for(local, basis, fixed, tauA, tauB);
    const Observable estA = observable_from_basis(basis, alphas);
    const Observable estB = observable_from_basis(basis, betas);

    SaturationResult result;
    result.scheme = build_scheme(estA, estB);
    result.stats = scheme_stats(result.scheme, A, B, state);
    result.verdict = evaluate_relation(spec.kind, fixed, result.stats, tol);
    result.commNorm = commutator_norm(estA, estB);

    double err = 0;
    const SchemeStats& st = result.stats;
    switch (spec.kind) {
    case RelationKind::F:
        err = std::max({std::abs(st.stdEstA - *local.targetStdEstA),
                        std::abs(st.stdEstB - *local.targetStdEstB),
                        std::abs(st.biasA - *local.targetBiasA),
                        std::abs(st.biasB - *local.targetBiasB)});
        break;
    case RelationKind::G:
        err = std::max(std::abs(st.stdEstA - *local.targetStdEstA),
                       std::abs(st.stdEstB - *local.targetStdEstB));
        break;
    case RelationKind::H:
        err = std::max(std::abs(st.biasA - *local.targetBiasA),
                       std::abs(st.biasB - *local.targetBiasB));
        break;
    case RelationKind::FBIS:
    case RelationKind::PRL:
        err = std::max(std::abs(st.meanEstA), std::abs(st.meanEstB));
        break;
    default:
        break;
    }
    result.maxTargetErr = err;

    if (spec.kind == RelationKind::FBIS && !fixed.coplanar)
        result.warning = "FBIS tightness proven only for |<A0 B0>| = 1; residual reported as-is";
    if (spec.kind == RelationKind::PRL &&
        (!fixed.coplanar || std::abs(fixed.meanA) > 1e-10 || std::abs(fixed.meanB) > 1e-10))
        result.warning =
            "PRL tightness proven only for <A> = <B> = 0 and |<A0 B0>| = 1; residual reported as-is";
    return result;
}

} // namespace etr
