#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "etr/explorer.hpp"
#include "etr/io.hpp"

namespace py = pybind11;
using namespace etr;

namespace {

SaturationSpec make_spec(RelationKind kind, double phi_param, Side side,
                         std::optional<double> stdEstA, std::optional<double> stdEstB,
                         std::optional<double> biasA, std::optional<double> biasB) {
    SaturationSpec spec;
    spec.kind = kind;
    spec.phi_param = phi_param;
    spec.side = side;
    spec.targetStdEstA = stdEstA;
    spec.targetStdEstB = stdEstB;
    spec.targetBiasA = biasA;
    spec.targetBiasB = biasB;
    return spec;
}

} // namespace

PYBIND11_MODULE(_etr, m) {
    m.doc() = "Error-trade-off relations for approximate joint quantum measurements";

    py::register_exception<Error>(m, "EtrError");

    py::enum_<RelationKind>(m, "RelationKind")
        .value("F", RelationKind::F)
        .value("G", RelationKind::G)
        .value("H", RelationKind::H)
        .value("PNAS", RelationKind::PNAS)
        .value("FBIS", RelationKind::FBIS)
        .value("PRL", RelationKind::PRL)
        .value("OZAWA", RelationKind::OZAWA)
        .value("HALL", RelationKind::HALL)
        .value("WESTON", RelationKind::WESTON)
        .value("ROBERTSON", RelationKind::ROBERTSON);

    py::enum_<Side>(m, "Side").value("LOWER", Side::LOWER).value("UPPER", Side::UPPER);

    py::class_<Observable>(m, "Observable")
        .def_property_readonly("dim", &Observable::dim)
        .def_property_readonly("matrix", &Observable::matrix)
        .def("__repr__", [](const Observable& o) {
            return "<Observable dim=" + std::to_string(o.dim()) + ">";
        });

    py::class_<QuantumState>(m, "QuantumState")
        .def_property_readonly("dim", &QuantumState::dim)
        .def_property_readonly("is_pure", &QuantumState::is_pure)
        .def_property_readonly("amplitudes", &QuantumState::amplitudes)
        .def("density_matrix", &QuantumState::density_matrix);

    py::class_<FixedParams>(m, "FixedParams")
        .def_readonly("meanA", &FixedParams::meanA)
        .def_readonly("meanB", &FixedParams::meanB)
        .def_readonly("stdA", &FixedParams::stdA)
        .def_readonly("stdB", &FixedParams::stdB)
        .def_readonly("cAB", &FixedParams::cAB)
        .def_readonly("tildeC", &FixedParams::tildeC)
        .def_readonly("corr", &FixedParams::corr)
        .def_readonly("r", &FixedParams::r)
        .def_readonly("phi", &FixedParams::phi)
        .def_readonly("phiPrime", &FixedParams::phiPrime)
        .def_readonly("q", &FixedParams::q)
        .def_readonly("coplanar", &FixedParams::coplanar);

    py::class_<JointScheme>(m, "JointScheme")
        .def_readonly("sysDim", &JointScheme::sysDim)
        .def_readonly("ancDim", &JointScheme::ancDim)
        .def_readonly("estA", &JointScheme::estA)
        .def_readonly("estB", &JointScheme::estB);

    py::class_<SchemeStats>(m, "SchemeStats")
        .def_readonly("epsA", &SchemeStats::epsA)
        .def_readonly("epsB", &SchemeStats::epsB)
        .def_readonly("stdEstA", &SchemeStats::stdEstA)
        .def_readonly("stdEstB", &SchemeStats::stdEstB)
        .def_readonly("biasA", &SchemeStats::biasA)
        .def_readonly("biasB", &SchemeStats::biasB)
        .def_readonly("meanEstA", &SchemeStats::meanEstA)
        .def_readonly("meanEstB", &SchemeStats::meanEstB);

    py::class_<RelationVerdict>(m, "RelationVerdict")
        .def_readonly("kind", &RelationVerdict::kind)
        .def_readonly("uA", &RelationVerdict::uA)
        .def_readonly("uB", &RelationVerdict::uB)
        .def_readonly("lhs", &RelationVerdict::lhs)
        .def_readonly("rhs", &RelationVerdict::rhs)
        .def_readonly("residual", &RelationVerdict::residual)
        .def_readonly("satisfied", &RelationVerdict::satisfied)
        .def_readonly("saturated", &RelationVerdict::saturated)
        .def("__repr__", [](const RelationVerdict& v) {
            return "<RelationVerdict " + to_string(v.kind) +
                   " residual=" + format_double(v.residual) + ">";
        });

    py::class_<SaturationResult>(m, "SaturationResult")
        .def_readonly("scheme", &SaturationResult::scheme)
        .def_readonly("stats", &SaturationResult::stats)
        .def_readonly("verdict", &SaturationResult::verdict)
        .def_readonly("commNorm", &SaturationResult::commNorm)
        .def_readonly("maxTargetErr", &SaturationResult::maxTargetErr)
        .def_readonly("warning", &SaturationResult::warning);

    py::class_<FrontierPoint>(m, "FrontierPoint")
        .def_readonly("epsA", &FrontierPoint::epsA)
        .def_readonly("epsB", &FrontierPoint::epsB)
        .def_readonly("phi_param", &FrontierPoint::phi_param)
        .def_readonly("violation", &FrontierPoint::violation);

    py::class_<QubitExampleReport::FamilyPoint>(m, "FamilyPoint")
        .def_readonly("phi", &QubitExampleReport::FamilyPoint::phi)
        .def_readonly("epsA_sq", &QubitExampleReport::FamilyPoint::epsASq)
        .def_readonly("epsB_sq", &QubitExampleReport::FamilyPoint::epsBSq);

    py::class_<QubitExampleReport>(m, "QubitExampleReport")
        .def_readonly("stdA_rho", &QubitExampleReport::stdA_rho)
        .def_readonly("stdB_rho", &QubitExampleReport::stdB_rho)
        .def_readonly("cAB_rho", &QubitExampleReport::cAB_rho)
        .def_readonly("cAB_ket0", &QubitExampleReport::cAB_ket0)
        .def_readonly("cAB_ket1", &QubitExampleReport::cAB_ket1)
        .def_readonly("strengthened_bound_rhs", &QubitExampleReport::strengthenedBoundRhs)
        .def_readonly("saturating_family", &QubitExampleReport::saturatingFamily)
        .def_readonly("family_max_sum_deviation", &QubitExampleReport::familyMaxSumDeviation)
        .def_readonly("envelope_max_deviation", &QubitExampleReport::envelopeMaxDeviation)
        .def_readonly("purification_epsA", &QubitExampleReport::purificationEpsA)
        .def_readonly("purification_epsB", &QubitExampleReport::purificationEpsB)
        .def_readonly("purification_comm_norm", &QubitExampleReport::purificationCommNorm);

    // constructors and operations
    m.def("validate_observable", &validate_observable, py::arg("matrix"));
    m.def("make_state", py::overload_cast<const Vector&>(&make_state), py::arg("amplitudes"));
    m.def("make_density", py::overload_cast<const Matrix&>(&make_state), py::arg("density"));
    m.def("expectation", &expectation, py::arg("obs"), py::arg("state"));
    m.def("std_dev", &std_dev, py::arg("obs"), py::arg("state"));
    m.def("reduced_observable", &reduced_observable, py::arg("obs"), py::arg("state"));
    m.def("fixed_params", &fixed_params, py::arg("A"), py::arg("B"), py::arg("state"));
    m.def("haar_random_state", &haar_random_state, py::arg("dim"), py::arg("seed"));
    m.def("random_hermitian", &random_hermitian, py::arg("dim"), py::arg("seed"));
    m.def("is_pm1_valued", &is_pm1_valued, py::arg("obs"));
    m.def("purify", &purify, py::arg("state"));
    m.def("pauli_x", &pauli_x);
    m.def("pauli_y", &pauli_y);
    m.def("pauli_z", &pauli_z);

    m.def(
        "build_scheme",
        [](const Observable& estA, const Observable& estB, std::optional<QuantumState> ancilla) {
            return build_scheme(estA, estB, ancilla);
        },
        py::arg("estA"), py::arg("estB"), py::arg("ancilla") = std::nullopt);
    m.def("scheme_stats", &scheme_stats, py::arg("scheme"), py::arg("A"), py::arg("B"),
          py::arg("state"));
    m.def("commutator_norm", &commutator_norm, py::arg("estA"), py::arg("estB"));

    m.def("f_value", &f_value, py::arg("stdA"), py::arg("stdEst"), py::arg("bias"), py::arg("eps"));
    m.def("g_value", &g_value, py::arg("stdA"), py::arg("stdEst"), py::arg("eps"));
    m.def("h_value", &h_value, py::arg("stdA"), py::arg("bias"), py::arg("eps"));
    m.def("f_mean_value", &f_mean_value, py::arg("meanA"), py::arg("stdA"), py::arg("meanEst"),
          py::arg("eps"));
    m.def("k_value", &k_value, py::arg("stdA"), py::arg("eps"));
    m.def("core_residual", &core_residual, py::arg("uA"), py::arg("uB"), py::arg("tildeC"));
    m.def("alt_form_satisfied", &alt_form_satisfied, py::arg("uA"), py::arg("uB"),
          py::arg("tildeC"));
    m.def("saturating_u", &saturating_u, py::arg("phi_param"), py::arg("angle"),
          py::arg("second_branch") = false);
    m.def("ozawa_residual", &ozawa_residual, py::arg("fixed"), py::arg("epsA"), py::arg("epsB"));
    m.def("hall_residual", &hall_residual, py::arg("stats"), py::arg("fixed"));
    m.def("weston_residual", &weston_residual, py::arg("stats"), py::arg("fixed"));
    m.def("evaluate_relation", &evaluate_relation, py::arg("kind"), py::arg("fixed"),
          py::arg("stats"), py::arg("tol") = tol::verdict);
    m.def("evaluate_all_relations", &evaluate_all_relations, py::arg("fixed"), py::arg("stats"),
          py::arg("tol") = tol::verdict);

    m.def(
        "saturating_scheme",
        [](const Observable& A, const Observable& B, const QuantumState& state, RelationKind kind,
           double phi_param, Side side, std::optional<double> stdEstA,
           std::optional<double> stdEstB, std::optional<double> biasA,
           std::optional<double> biasB, double tol) {
            return saturating_scheme(
                A, B, state,
                make_spec(kind, phi_param, side, stdEstA, stdEstB, biasA, biasB), tol);
        },
        py::arg("A"), py::arg("B"), py::arg("state"), py::arg("kind"), py::arg("phi_param"),
        py::arg("side") = Side::LOWER, py::arg("target_std_est_a") = std::nullopt,
        py::arg("target_std_est_b") = std::nullopt, py::arg("target_bias_a") = std::nullopt,
        py::arg("target_bias_b") = std::nullopt, py::arg("tol") = tol::verdict);

    m.def(
        "random_scan",
        [](const Observable& A, const Observable& B, const QuantumState& state, int n,
           std::uint64_t seed) { return random_scan(A, B, state, n, seed); },
        py::arg("A"), py::arg("B"), py::arg("state"), py::arg("samples"), py::arg("seed") = 0);

    m.def(
        "mixed_strengthen",
        [](const Observable& A, const Observable& B, const std::vector<double>& weights,
           const std::vector<QuantumState>& components, int phiGridSize) {
            return mixed_strengthen(A, B, make_decomposition(weights, components), phiGridSize);
        },
        py::arg("A"), py::arg("B"), py::arg("weights"), py::arg("components"),
        py::arg("phi_grid_size") = 721);

    m.def("qubit_example_report", &qubit_example_report);

    m.attr("__version__") = "0.1.0";
}
