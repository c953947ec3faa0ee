#include "etr/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace etr {

namespace {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("complex entries must be [re, im] number pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
    const auto rows = j.size();
    const auto cols = j[0].size();
    Matrix m(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw ParseError("matrix rows must have equal length");
        for (size_t k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
    }
    return m;
}

Json number_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

} // namespace

Json to_json(const Observable& obs) {
    return Json{{"dim", obs.dim()}, {"matrix", matrix_to_json(obs.matrix())}};
}

Json to_json(const QuantumState& state) {
    if (state.is_pure()) {
        Json amps = Json::array();
        for (Eigen::Index i = 0; i < state.amplitudes().size(); ++i)
            amps.push_back(complex_to_json(state.amplitudes()(i)));
        return Json{{"pure", std::move(amps)}};
    }
    return Json{{"density", matrix_to_json(state.density_matrix())}};
}

Json to_json(const JointScheme& scheme) {
    Json j;
    j["ancilla"] = scheme.ancilla ? to_json(*scheme.ancilla) : Json(nullptr);
    j["estA"] = to_json(scheme.estA);
    j["estB"] = to_json(scheme.estB);
    return j;
}

Json to_json(const FixedParams& p) {
    Json j{{"meanA", p.meanA},     {"meanB", p.meanB},
           {"stdA", p.stdA},       {"stdB", p.stdB},
           {"cAB", p.cAB},         {"tildeC", p.tildeC},
           {"corr", complex_to_json(p.corr)},
           {"r", p.r},             {"phi", p.phi},
           {"phiPrime", p.phiPrime},
           {"coplanar", p.coplanar}};
    j["q"] = p.q ? Json(*p.q) : Json(nullptr);
    return j;
}

Json to_json(const SchemeStats& s) {
    return Json{{"epsA", s.epsA},       {"epsB", s.epsB},       {"stdEstA", s.stdEstA},
                {"stdEstB", s.stdEstB}, {"biasA", s.biasA},     {"biasB", s.biasB},
                {"meanEstA", s.meanEstA}, {"meanEstB", s.meanEstB}};
}

Json to_json(const RelationVerdict& v) {
    return Json{{"kind", to_string(v.kind)}, {"uA", number_or_null(v.uA)},
                {"uB", number_or_null(v.uB)}, {"lhs", v.lhs},
                {"rhs", v.rhs},               {"residual", v.residual},
                {"satisfied", v.satisfied},   {"saturated", v.saturated}};
}

Json to_json(const Decomposition& d) {
    Json components = Json::array();
    for (const QuantumState& c : d.components) components.push_back(to_json(c));
    return Json{{"weights", d.weights}, {"components", std::move(components)}};
}

Json to_json(const QubitExampleReport& r) {
    Json family = Json::array();
    for (const auto& p : r.saturatingFamily)
        family.push_back(Json{{"phi", p.phi}, {"epsA_sq", p.epsASq}, {"epsB_sq", p.epsBSq}});
    return Json{{"stdA_rho", r.stdA_rho},
                {"stdB_rho", r.stdB_rho},
                {"cAB_rho", r.cAB_rho},
                {"cAB_ket0", r.cAB_ket0},
                {"cAB_ket1", r.cAB_ket1},
                {"strengthened_bound_rhs", r.strengthenedBoundRhs},
                {"saturating_family", std::move(family)},
                {"family_max_sum_deviation", r.familyMaxSumDeviation},
                {"envelope_max_deviation", r.envelopeMaxDeviation},
                {"necessary_bound_only", true},
                {"purification",
                 Json{{"epsA", r.purificationEpsA},
                      {"epsB", r.purificationEpsB},
                      {"commutator_norm", r.purificationCommNorm}}}};
}

Observable observable_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("matrix")) throw ParseError("observable needs a \"matrix\" field");
    const Matrix m = matrix_from_json(j["matrix"]);
    if (j.contains("dim") && j["dim"].get<int>() != m.rows())
        throw ParseError("observable \"dim\" disagrees with the matrix size");
    return validate_observable(m);
}

QuantumState state_from_json(const Json& j) {
    if (j.is_object() && j.contains("pure")) {
        const Json& amps = j["pure"];
        Vector v(amps.size());
        for (size_t i = 0; i < amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(amps[i]);
        return make_state(v);
    }
    if (j.is_object() && j.contains("density")) return make_state(matrix_from_json(j["density"]));
    throw ParseError("state needs a \"pure\" or \"density\" field");
}

JointScheme scheme_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("estA") || !j.contains("estB"))
        throw ParseError("scheme needs \"estA\" and \"estB\" fields");
    std::optional<QuantumState> ancilla;
    if (j.contains("ancilla") && !j["ancilla"].is_null()) ancilla = state_from_json(j["ancilla"]);
    return build_scheme(observable_from_json(j["estA"]), observable_from_json(j["estB"]), ancilla);
}

Decomposition decomposition_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("weights") || !j.contains("components"))
        throw ParseError("decomposition needs \"weights\" and \"components\" fields");
    std::vector<double> weights = j["weights"].get<std::vector<double>>();
    std::vector<QuantumState> components;
    for (const Json& c : j["components"]) components.push_back(state_from_json(c));
    return make_decomposition(std::move(weights), std::move(components));
}

Json parse_json(const std::string& text, const std::string& label) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(label + ": " + e.what());
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str(), path);
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

} // namespace etr
