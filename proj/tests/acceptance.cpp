// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned in the checks below.

#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "etr/explorer.hpp"
#include "etr/io.hpp"
#include "helpers.hpp"

using namespace etr;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& run) {
    std::string detail;
    bool ok = false;
    try {
        ok = run(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    std::printf("%s  criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

QuantumState ket(int which) {
    Vector v(2);
    v << (which == 0 ? 1 : 0), (which == 0 ? 0 : 1);
    return make_state(v);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool qubit_worked_example(std::string& detail) {
    const QubitExampleReport r = qubit_example_report();
    const double worst =
        std::max({std::abs(r.stdA_rho - 1.0), std::abs(r.stdB_rho - 1.0), std::abs(r.cAB_rho),
                  std::abs(r.cAB_ket0 - 1.0), std::abs(r.cAB_ket1 + 1.0)});
    detail = "max deviation " + format_double(worst);
    return worst <= 1e-12;
}

bool mixed_state_bound(std::string& detail) {
    const Decomposition d = make_decomposition({0.5, 0.5}, {ket(0), ket(1)});
    double envDev = 0;
    const auto envelope = mixed_strengthen(pauli_x(), pauli_y(), d, 721);
    if (envelope.size() != 721) {
        detail = "lambda grid size mismatch";
        return false;
    }
    for (const FrontierPoint& p : envelope)
        envDev = std::max(envDev, std::abs(p.epsA * p.epsA + p.epsB * p.epsB - 1.0));

    double famDev = 0;
    const QuantumState rho = make_state(Matrix(Matrix::Identity(2, 2) / 2.0));
    for (double phi : {0.0, M_PI / 6, M_PI / 4, M_PI / 3, M_PI / 2}) {
        const Matrix axis =
            std::cos(phi) * pauli_x().matrix() + std::sin(phi) * pauli_y().matrix();
        const SchemeStats s =
            scheme_stats(build_scheme(validate_observable(Matrix(std::cos(phi) * axis)),
                                      validate_observable(Matrix(std::sin(phi) * axis))),
                         pauli_x(), pauli_y(), rho);
        famDev = std::max(famDev, std::abs(s.epsA * s.epsA - std::pow(std::sin(phi), 2)));
        famDev = std::max(famDev, std::abs(s.epsB * s.epsB - std::pow(std::cos(phi), 2)));
    }
    detail = "envelope deviation " + format_double(envDev) + ", family deviation " +
             format_double(famDev);
    return envDev <= 1e-6 && famDev <= 1e-12;
}

bool tightness_suite(std::string& detail) {
    std::mt19937_64 rng(2024);
    double worstResidual = 0, worstComm = 0, worstTarget = 0;
    for (int d = 2; d <= 4; ++d) {
        for (int s = 0; s < 50; ++s) {
            Observable A = random_hermitian(d, rng());
            Observable B = random_hermitian(d, rng());
            QuantumState psi = haar_random_state(d, rng());
            const FixedParams fixed = fixed_params(A, B, psi);
            const bool secondBranch = fixed.coplanar && std::cos(fixed.phi) < 0;
            const double angle = fixed.coplanar ? fixed.phi : fixed.phiPrime;
            const auto [lo, hi] = saturating_interval(angle, secondBranch);

            SaturationSpec base;
            base.targetStdEstA = uniform(rng, 0.3, 1.5) * fixed.stdA;
            base.targetStdEstB = uniform(rng, 0.3, 1.5) * fixed.stdB;
            base.targetBiasA = uniform(rng, -0.5, 0.5) * fixed.stdA;
            base.targetBiasB = uniform(rng, -0.5, 0.5) * fixed.stdB;

            struct Variant {
                RelationKind kind;
                Side side;
            };
            for (const Variant& v :
                 {Variant{RelationKind::F, Side::LOWER}, Variant{RelationKind::F, Side::UPPER},
                  Variant{RelationKind::G, Side::LOWER}, Variant{RelationKind::H, Side::LOWER},
                  Variant{RelationKind::PNAS, Side::LOWER}}) {
                SaturationSpec spec = base;
                spec.kind = v.kind;
                spec.side = v.side;
                for (int j = 0; j < 41; ++j) {
                    spec.phi_param = lo + (hi - lo) * j / 40.0;
                    const SaturationResult r = saturating_scheme(A, B, psi, spec);
                    worstResidual = std::max(worstResidual, std::abs(r.verdict.residual));
                    worstComm = std::max(worstComm, r.commNorm);
                    worstTarget = std::max(worstTarget, r.maxTargetErr);
                }
            }
        }
    }
    detail = "max |residual| " + format_double(worstResidual) + ", commutator " +
             format_double(worstComm) + ", target error " + format_double(worstTarget);
    return worstResidual <= 1e-9 && worstComm <= 1e-10 && worstTarget <= 1e-9;
}

bool same_spectrum_tightness(std::string& detail) {
    double worst = 0;
    // sigma_x / sigma_y - plane targets on the +z and -z eigenstates keep
    // <A> = <B> = 0 with tunable incompatibility
    for (int state = 0; state < 2; ++state) {
        for (double a : {0.0, 0.4, 1.1}) {
            for (double b : {M_PI / 2, M_PI / 3, 1.9}) {
                const Matrix ma =
                    std::cos(a) * pauli_x().matrix() + std::sin(a) * pauli_y().matrix();
                const Matrix mb =
                    std::cos(b) * pauli_x().matrix() + std::sin(b) * pauli_y().matrix();
                const Observable A = validate_observable(ma);
                const Observable B = validate_observable(mb);
                const QuantumState psi = ket(state);
                const FixedParams fixed = fixed_params(A, B, psi);
                const bool secondBranch = std::cos(fixed.phi) < 0;
                const auto [lo, hi] = saturating_interval(fixed.phi, secondBranch);
                for (RelationKind kind : {RelationKind::PRL, RelationKind::FBIS}) {
                    for (Side side : {Side::LOWER, Side::UPPER}) {
                        SaturationSpec spec;
                        spec.kind = kind;
                        spec.side = side;
                        for (int j = 0; j < 41; ++j) {
                            spec.phi_param = lo + (hi - lo) * j / 40.0;
                            const SaturationResult r = saturating_scheme(A, B, psi, spec);
                            worst = std::max(worst, std::abs(r.verdict.residual));
                        }
                    }
                }
            }
        }
    }
    detail = "max |residual| " + format_double(worst);
    return worst <= 1e-9;
}

bool implication_chain(std::string& detail) {
    std::mt19937_64 rng(71);
    double worst = 0;
    int admissible = 0;
    while (admissible < 10000) {
        const double tildeC = uniform(rng, -1.0, 1.0);
        const double uA = uniform(rng, 0.0, 1.0), uB = uniform(rng, 0.0, 1.0);
        if (core_residual(uA, uB, tildeC) < 0) continue;
        ++admissible;
        FixedParams f;
        f.stdA = f.stdB = 1.0;
        f.tildeC = tildeC;
        f.cAB = tildeC;
        worst = std::min(worst, ozawa_residual(f, uA, uB));
        const double X = uniform(rng, 0.0, 2.0), Y = uniform(rng, 0.0, 2.0);
        worst = std::min(worst, cauchy3_bound(uA, uB, X, Y, tildeC));
        worst = std::min(worst, cauchy4_bound(uA, uB, X, Y, tildeC));

        SchemeStats s;
        s.epsA = uA;
        s.epsB = uB;
        s.stdEstA = X;
        s.stdEstB = Y;
        // hall/weston follow once the matching g-relation holds
        try {
            const double gA = g_value(1.0, X, uA), gB = g_value(1.0, Y, uB);
            if (core_residual(gA, gB, tildeC) >= 0) {
                worst = std::min(worst, hall_residual(s, f));
                worst = std::min(worst, weston_residual(s, f));
            }
        } catch (const OutOfDomain&) {
        }
    }

    // and on every oracle scheme
    for (const FrontierPoint& p : random_scan(pauli_x(), pauli_y(), ket(0), 2000, 5))
        worst = std::min(worst, p.violation);
    detail = "worst residual " + format_double(worst);
    return worst >= -1e-10;
}

bool equivalence_grid(std::string& detail) {
    int mismatches = 0;
    for (int ic = 0; ic < 21; ++ic) {
        const double tildeC = -1.0 + 2.0 * ic / 20.0;
        for (int ia = 0; ia < 200; ++ia) {
            for (int ib = 0; ib < 200; ++ib) {
                const double uA = 1.5 * ia / 199.0, uB = 1.5 * ib / 199.0;
                const bool core = core_residual(uA, uB, tildeC) >= -1e-12;
                if (core != alt_form_satisfied(uA, uB, tildeC)) ++mismatches;
                if (core != alt_form_variant_satisfied(uA, uB, tildeC)) ++mismatches;
            }
        }
    }
    detail = std::to_string(mismatches) + " mismatches on the 200x200x21 grid";
    return mismatches == 0;
}

bool identity_and_bounds(std::string& detail) {
    std::mt19937_64 rng(303);
    double worstIdentity = 0;
    bool contained = true;
    for (int d = 2; d <= 4; ++d) {
        for (int i = 0; i < 1000; ++i) {
            const Observable A = random_hermitian(d, rng());
            const Observable B = random_hermitian(d, rng());
            const QuantumState psi = haar_random_state(d, rng());
            const int ancDim = (i % 4 == 0) ? 2 : 1;
            const JointScheme scheme = etr::testing::random_commuting_scheme(d, ancDim, rng);
            const FixedParams fixed = fixed_params(A, B, psi);
            const SchemeStats stats = scheme_stats(scheme, A, B, psi);
            const auto [ra, rb] = consistency_identity(stats, fixed, scheme, A, B, psi);
            worstIdentity = std::max({worstIdentity, ra, rb});
            const auto [loA, hiA] = variance_triangle(fixed, stats.stdEstA, stats.biasA, Target::A);
            const auto [loB, hiB] = variance_triangle(fixed, stats.stdEstB, stats.biasB, Target::B);
            contained = contained && stats.epsA * stats.epsA >= loA - 1e-10 &&
                        stats.epsA * stats.epsA <= hiA + 1e-10 &&
                        stats.epsB * stats.epsB >= loB - 1e-10 &&
                        stats.epsB * stats.epsB <= hiB + 1e-10;
        }
    }

    double worstLemma = 0;
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto unit = [&] {
        Eigen::VectorXd v(6);
        for (int i = 0; i < 6; ++i) v(i) = gauss(rng);
        return Eigen::VectorXd(v / v.norm());
    };
    for (int i = 0; i < 10000; ++i) {
        LemmaVectors w;
        w.aHat = unit();
        w.bHat = unit();
        w.xHat = unit();
        Eigen::VectorXd y = unit();
        y -= y.dot(w.xHat) * w.xHat;
        w.yHat = y / y.norm();
        worstLemma = std::min(worstLemma, lemma_check(w));
    }
    detail = "max identity residual " + format_double(worstIdentity) + ", min lemma residual " +
             format_double(worstLemma) + (contained ? "" : ", triangle containment violated");
    return worstIdentity <= 1e-9 && worstLemma >= -1e-10 && contained;
}

bool weak_value_properties(std::string& detail) {
    std::mt19937_64 rng(909);
    double worstDeviationGap = 0;
    bool allIncrease = true;
    for (int d = 2; d <= 4; ++d) {
        for (int s = 0; s < 10; ++s) {
            const Observable A = random_hermitian(d, rng());
            const Observable B = random_hermitian(d, rng());
            const QuantumState psi = haar_random_state(d, rng());
            const FixedParams fixed = fixed_params(A, B, psi);
            const double angle = fixed.coplanar ? fixed.phi : fixed.phiPrime;
            SaturationSpec spec;
            spec.kind = RelationKind::PNAS;
            spec.phi_param = uniform(rng, -0.9, 0.9) * std::abs(angle);
            if (fixed.coplanar && std::cos(fixed.phi) < 0)
                spec.phi_param = M_PI; // second-branch interior point

            const ConstructionBasis basis = build_basis(A, B, psi, fixed, spec);
            const auto [alphas, betas] = eigenvalues_for(spec, basis, fixed, 1, 1);
            const Observable estA = observable_from_basis(basis, alphas);
            const Observable estB = observable_from_basis(basis, betas);
            const SchemeStats stats = scheme_stats(build_scheme(estA, estB), A, B, psi);
            worstDeviationGap = std::max(
                worstDeviationGap,
                std::abs(stats.stdEstA * stats.stdEstA -
                         (fixed.stdA * fixed.stdA - stats.epsA * stats.epsA)));
            worstDeviationGap = std::max(
                worstDeviationGap,
                std::abs(stats.stdEstB * stats.stdEstB -
                         (fixed.stdB * fixed.stdB - stats.epsB * stats.epsB)));

            for (int k = 0; k < basis.spanSize; ++k) {
                for (double delta : {-0.01, 0.01}) {
                    std::vector<double> bumped = alphas;
                    bumped[k] += delta;
                    const SchemeStats moved = scheme_stats(
                        build_scheme(observable_from_basis(basis, bumped), estB), A, B, psi);
                    allIncrease =
                        allIncrease && moved.epsA * moved.epsA > stats.epsA * stats.epsA;
                }
            }
        }
    }
    detail = "max |stdEst^2 - (std^2 - eps^2)| " + format_double(worstDeviationGap) +
             (allIncrease ? "" : ", a perturbation failed to increase the error");
    return worstDeviationGap <= 1e-10 && allIncrease;
}

bool oracle_consistency(std::string& detail) {
    const auto points = random_scan(pauli_x(), pauli_y(), ket(0), 2000, 17);
    double worstViolation = 0;
    for (const FrontierPoint& p : points) worstViolation = std::min(worstViolation, p.violation);

    SaturationSpec spec;
    spec.kind = RelationKind::PNAS;
    std::vector<std::pair<double, double>> frontier;
    for (int j = 0; j <= 200; ++j) {
        spec.phi_param = -M_PI / 2 + M_PI * j / 200.0;
        const SaturationResult r = saturating_scheme(pauli_x(), pauli_y(), ket(0), spec);
        frontier.emplace_back(r.stats.epsA, r.stats.epsB);
    }
    double best = 1e9;
    for (const FrontierPoint& p : points)
        for (const auto& [fa, fb] : frontier)
            best = std::min(best, std::hypot(p.epsA - fa, p.epsB - fb));
    detail = "worst violation " + format_double(worstViolation) + ", frontier distance " +
             format_double(best);
    return worstViolation >= -1e-9 && best <= 0.02;
}

} // namespace

int main() {
    criterion(1, "fully mixed qubit worked example", qubit_worked_example);
    criterion(2, "mixed-state strengthened bound", mixed_state_bound);
    criterion(3, "tightness suite (F both sides, G, H, PNAS)", tightness_suite);
    criterion(4, "same-spectrum tightness (FBIS/PRL, centered targets)", same_spectrum_tightness);
    criterion(5, "implication chain and decomposition bounds", implication_chain);
    criterion(6, "general form vs alternative form equivalence", equivalence_grid);
    criterion(7, "identity, triangle bounds, geometric lemma", identity_and_bounds);
    criterion(8, "weak-value deviation identity and minimality", weak_value_properties);
    criterion(9, "oracle scan consistency and frontier approach", oracle_consistency);

    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all 9 criteria passed\n");
    return 0;
}
