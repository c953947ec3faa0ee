#include <doctest.h>

#include "helpers.hpp"

using namespace etr;

namespace {

QuantumState ket0() {
    Vector v(2);
    v << 1, 0;
    return make_state(v);
}

QuantumState ket1() {
    Vector v(2);
    v << 0, 1;
    return make_state(v);
}

} // namespace

TEST_CASE("random_scan: determinism, feasibility, frontier approach") {
    const auto points = random_scan(pauli_x(), pauli_y(), ket0(), 500, 7);
    const auto again = random_scan(pauli_x(), pauli_y(), ket0(), 500, 7);
    REQUIRE(points.size() == 500);
    for (size_t i = 0; i < points.size(); ++i) {
        CHECK(points[i].epsA == again[i].epsA);
        CHECK(points[i].epsB == again[i].epsB);
        CHECK(points[i].violation >= -1e-9);
    }

    // frontier samples for comparison
    std::vector<std::pair<double, double>> frontier;
    SaturationSpec spec;
    spec.kind = RelationKind::PNAS;
    for (int j = 0; j <= 100; ++j) {
        spec.phi_param = -M_PI / 2 + M_PI * j / 100.0;
        const SaturationResult r = saturating_scheme(pauli_x(), pauli_y(), ket0(), spec);
        frontier.emplace_back(r.stats.epsA, r.stats.epsB);
    }
    double best = 1e9;
    for (const FrontierPoint& p : points) {
        for (const auto& [fa, fb] : frontier)
            best = std::min(best, std::hypot(p.epsA - fa, p.epsB - fb));
    }
    CHECK(best <= 0.02);
}

TEST_CASE("decomposition validation") {
    CHECK_THROWS_AS(make_decomposition({0.5, 0.4}, {ket0(), ket1()}), ValidationError);
    CHECK_THROWS_AS(make_decomposition({1.5, -0.5}, {ket0(), ket1()}), ValidationError);
    CHECK_THROWS_AS(make_decomposition({1.0}, {make_state(Matrix(Matrix::Identity(2, 2) / 2.0))}),
                    ValidationError);

    const Decomposition d = make_decomposition({0.5, 0.5}, {ket0(), ket1()});
    CHECK((d.reconstruct() - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-14);

    const Decomposition eig =
        eigen_decomposition(make_state(Matrix(Matrix::Identity(2, 2) / 2.0)));
    CHECK((eig.reconstruct() - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("squared errors are linear across decompositions") {
    const Decomposition d = make_decomposition({0.5, 0.5}, {ket0(), ket1()});

    // the rotated-axis family at phi = pi/4
    const double phi = M_PI / 4;
    const Matrix axis = std::cos(phi) * pauli_x().matrix() + std::sin(phi) * pauli_y().matrix();
    const JointScheme family = build_scheme(validate_observable(Matrix(std::cos(phi) * axis)),
                                            validate_observable(Matrix(std::sin(phi) * axis)));
    const auto [ra, rb] = mixed_linearity_check(family, pauli_x(), pauli_y(), d);
    CHECK(ra <= 1e-12);
    CHECK(rb <= 1e-12);

    const Decomposition single = make_decomposition({1.0}, {ket0()});
    const JointScheme trivial =
        build_scheme(validate_observable(Matrix(Matrix::Zero(2, 2))), pauli_y());
    const auto [ta, tb] = mixed_linearity_check(trivial, pauli_x(), pauli_y(), single);
    CHECK(ta == doctest::Approx(0.0));
    CHECK(tb == doctest::Approx(0.0));

    std::mt19937_64 rng(3);
    const QuantumState c1 = haar_random_state(3, rng());
    const QuantumState c2 = haar_random_state(3, rng());
    const Decomposition rank2 = make_decomposition({0.7, 0.3}, {c1, c2});
    const JointScheme scheme = etr::testing::random_commuting_scheme(3, 1, rng);
    const auto [ua, ub] =
        mixed_linearity_check(scheme, random_hermitian(3, 5), random_hermitian(3, 6), rank2);
    CHECK(ua <= 1e-10);
    CHECK(ub <= 1e-10);
}

TEST_CASE("mixed_strengthen: quarter circle, reduction, dominance") {
    const Decomposition d = make_decomposition({0.5, 0.5}, {ket0(), ket1()});
    const auto envelope = mixed_strengthen(pauli_x(), pauli_y(), d, 721);
    REQUIRE(envelope.size() == 721);
    for (const FrontierPoint& p : envelope)
        CHECK(std::abs(p.epsA * p.epsA + p.epsB * p.epsB - 1.0) <= 1e-6);

    // single component: envelope touches that component's own tight frontier
    const Decomposition single = make_decomposition({1.0}, {ket0()});
    const FixedParams fixed = fixed_params(pauli_x(), pauli_y(), ket0());
    for (const FrontierPoint& p : mixed_strengthen(pauli_x(), pauli_y(), single, 101)) {
        const double lambda = *p.phi_param;
        double best = 1e9;
        for (int j = 0; j < 801; ++j) {
            const double phi = -std::abs(fixed.phi) + 2 * std::abs(fixed.phi) * j / 800.0;
            const auto [uA, uB] = saturating_u(phi, fixed.phi);
            best = std::min(best, lambda * uA * uA + (1 - lambda) * uB * uB);
        }
        const double objective = lambda * p.epsA * p.epsA + (1 - lambda) * p.epsB * p.epsB;
        CHECK(objective == doctest::Approx(best).epsilon(1e-4));
    }

    // a biased mixture dominates the naive bound from the mixed-state
    // fixed parameters alone
    const Decomposition biased = make_decomposition({0.9, 0.1}, {ket0(), ket1()});
    Matrix rho = 0.9 * ket0().density_matrix() + 0.1 * ket1().density_matrix();
    const FixedParams mixedFixed = fixed_params(pauli_x(), pauli_y(), make_state(rho));
    CHECK(mixedFixed.tildeC == doctest::Approx(0.8));
    const auto strong = mixed_strengthen(pauli_x(), pauli_y(), biased, 721);
    bool strictlyStronger = false;
    for (const FrontierPoint& p : strong) {
        const double lambda = *p.phi_param;
        double naive = 1e9;
        for (int j = 0; j < 721; ++j) {
            const double phi =
                -std::abs(mixedFixed.phiPrime) + 2 * std::abs(mixedFixed.phiPrime) * j / 720.0;
            const auto [uA, uB] = saturating_u(phi, mixedFixed.phiPrime);
            naive = std::min(naive, lambda * std::pow(mixedFixed.stdA * uA, 2) +
                                        (1 - lambda) * std::pow(mixedFixed.stdB * uB, 2));
        }
        const double objective = lambda * p.epsA * p.epsA + (1 - lambda) * p.epsB * p.epsB;
        CHECK(objective >= naive - 1e-9);
        if (objective > naive + 1e-3) strictlyStronger = true;
    }
    CHECK(strictlyStronger);
}

TEST_CASE("oracle points on a mixed state respect its purification") {
    std::mt19937_64 rng(9);
    Matrix rho = 0.6 * haar_random_state(2, rng()).density_matrix() +
                 0.4 * haar_random_state(2, rng()).density_matrix();
    const QuantumState mixed = make_state(rho);
    const Observable A = pauli_x(), B = pauli_y();

    const Matrix u = haar_random_unitary(2, rng());
    std::vector<Vector> basis{u.col(0), u.col(1)};
    const Observable estA = validate_observable(
        Matrix(optimal_eigenvalues(basis, A, mixed)[0] * (basis[0] * basis[0].adjoint()) +
               optimal_eigenvalues(basis, A, mixed)[1] * (basis[1] * basis[1].adjoint())));
    const Observable estB = validate_observable(
        Matrix(optimal_eigenvalues(basis, B, mixed)[0] * (basis[0] * basis[0].adjoint()) +
               optimal_eigenvalues(basis, B, mixed)[1] * (basis[1] * basis[1].adjoint())));
    const JointScheme scheme = build_scheme(estA, estB);
    const SchemeStats direct = scheme_stats(scheme, A, B, mixed);

    const QuantumState pure = purify(mixed);
    const int m = pure.dim() / 2;
    const Matrix idm = Matrix::Identity(m, m);
    const SchemeStats lifted = scheme_stats(
        build_scheme(validate_observable(kron(estA.matrix(), idm)),
                     validate_observable(kron(estB.matrix(), idm))),
        validate_observable(kron(A.matrix(), idm)), validate_observable(kron(B.matrix(), idm)),
        pure);
    CHECK(std::abs(direct.epsA - lifted.epsA) <= 1e-10);
    CHECK(std::abs(direct.epsB - lifted.epsB) <= 1e-10);
}

TEST_CASE("qubit example report reproduces the worked values") {
    const QubitExampleReport r = qubit_example_report();
    CHECK(r.stdA_rho == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.stdB_rho == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(r.cAB_rho) < 1e-12);
    CHECK(r.cAB_ket0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.cAB_ket1 == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(r.strengthenedBoundRhs == 1.0);
    CHECK(r.familyMaxSumDeviation <= 1e-12);
    CHECK(r.envelopeMaxDeviation <= 1e-6);
    CHECK(r.purificationEpsA == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.purificationEpsB == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.purificationCommNorm <= 1e-12);

    REQUIRE(r.saturatingFamily.size() == 5);
    CHECK(r.saturatingFamily[4].phi == doctest::Approx(M_PI / 2));
    CHECK(r.saturatingFamily[4].epsASq == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.saturatingFamily[4].epsBSq == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.saturatingFamily[2].epsASq == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.saturatingFamily[2].epsBSq == doctest::Approx(0.5).epsilon(1e-12));
}
