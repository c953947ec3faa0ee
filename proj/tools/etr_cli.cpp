// Command-line frontend: JSON in, CSV/JSON out.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "etr/io.hpp"

namespace {

using namespace etr;

struct Options {
    std::string input;
    std::string output;
    std::string relation = "PNAS";
    std::string side = "lower";
    int phiSteps = 41;
    int samples = 0;
    std::uint64_t seed = 0;
    double tol = tol::verdict;
};

/// Writes to the output path, or stdout when none is given.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ValidationError("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

Json require_input(const Options& opt) {
    if (opt.input.empty()) throw ValidationError("this subcommand requires --input");
    return load_json_file(opt.input);
}

Json require_field(const Json& j, const std::string& key, const std::string& label) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(label + ": missing field \"" + key + "\"");
    return j[key];
}

Side parse_side(const std::string& side) {
    if (side == "lower" || side == "LOWER") return Side::LOWER;
    if (side == "upper" || side == "UPPER") return Side::UPPER;
    throw ValidationError("--side must be lower or upper");
}

/// Canonical construction targets when the input does not specify any:
/// generic deviations and biases scaled to the fixed parameters.
void apply_targets(SaturationSpec& spec, const FixedParams& fixed, const Json& input) {
    spec.targetStdEstA = 0.75 * fixed.stdA;
    spec.targetStdEstB = 0.6 * fixed.stdB;
    spec.targetBiasA = 0.2 * fixed.stdA;
    spec.targetBiasB = -0.15 * fixed.stdB;
    if (input.is_object() && input.contains("targets")) {
        const Json& t = input["targets"];
        if (t.contains("stdEstA")) spec.targetStdEstA = t["stdEstA"].get<double>();
        if (t.contains("stdEstB")) spec.targetStdEstB = t["stdEstB"].get<double>();
        if (t.contains("biasA")) spec.targetBiasA = t["biasA"].get<double>();
        if (t.contains("biasB")) spec.targetBiasB = t["biasB"].get<double>();
    }
}

int run_analyze(const Options& opt) {
    const Json input = require_input(opt);
    const Observable A = observable_from_json(require_field(input, "A", opt.input));
    const Observable B = observable_from_json(require_field(input, "B", opt.input));
    const QuantumState state = state_from_json(require_field(input, "state", opt.input));
    const JointScheme scheme = scheme_from_json(require_field(input, "scheme", opt.input));

    const FixedParams fixed = fixed_params(A, B, state);
    const SchemeStats stats = scheme_stats(scheme, A, B, state);
    Json verdicts = Json::array();
    for (const RelationVerdict& v : evaluate_all_relations(fixed, stats, opt.tol))
        verdicts.push_back(to_json(v));

    Json out;
    out["fixed_params"] = to_json(fixed);
    out["scheme_stats"] = to_json(stats);
    out["relations"] = std::move(verdicts);
    Sink sink(opt.output);
    sink.stream() << out.dump(2) << "\n";
    return 0;
}

void frontier_row(std::ostream& os, double phi, const SaturationResult& r,
                  const FixedParams& fixed) {
    os << format_double(phi) << ',' << format_double(r.verdict.uA) << ','
       << format_double(r.verdict.uB) << ',' << format_double(r.stats.epsA) << ','
       << format_double(r.stats.epsB) << ',' << format_double(r.verdict.residual) << ','
       << format_double(ozawa_residual(fixed, r.stats.epsA, r.stats.epsB)) << ','
       << format_double(hall_residual(r.stats, fixed)) << ','
       << format_double(weston_residual(r.stats, fixed)) << '\n';
}

int run_frontier(const Options& opt) {
    const Json input = require_input(opt);
    const Observable A = observable_from_json(require_field(input, "A", opt.input));
    const Observable B = observable_from_json(require_field(input, "B", opt.input));
    const QuantumState state = state_from_json(require_field(input, "state", opt.input));
    const FixedParams fixed = fixed_params(A, B, state);

    SaturationSpec spec;
    spec.kind = relation_kind_from_string(opt.relation);
    spec.side = parse_side(opt.side);
    apply_targets(spec, fixed, input);

    const bool secondBranch = fixed.coplanar && std::cos(fixed.phi) < 0;
    const double angle = fixed.coplanar ? fixed.phi : fixed.phiPrime;
    const auto [lo, hi] = saturating_interval(angle, secondBranch);

    Sink sink(opt.output);
    sink.stream() << "phi_param,uA,uB,epsA,epsB,residual,ozawa_residual,hall_residual,"
                     "weston_residual\n";
    for (int i = 0; i < opt.phiSteps; ++i) {
        spec.phi_param = lo + (hi - lo) * i / std::max(opt.phiSteps - 1, 1);
        const SaturationResult r = saturating_scheme(A, B, state, spec, opt.tol);
        frontier_row(sink.stream(), spec.phi_param, r, fixed);
    }
    return 0;
}

int run_verify(const Options& opt) {
    struct Case {
        std::string label;
        Observable A, B;
        QuantumState state;
    };
    std::vector<Case> cases;
    if (!opt.input.empty()) {
        const Json input = load_json_file(opt.input);
        cases.push_back({"input", observable_from_json(require_field(input, "A", opt.input)),
                         observable_from_json(require_field(input, "B", opt.input)),
                         state_from_json(require_field(input, "state", opt.input))});
    } else {
        Vector ket0(2);
        ket0 << 1, 0;
        cases.push_back({"xy_ket0", pauli_x(), pauli_y(), make_state(ket0)});
        const int perDim = opt.samples > 0 ? opt.samples : 5;
        for (int d = 2; d <= 4; ++d)
            for (int i = 0; i < perDim; ++i)
                cases.push_back({"haar_d" + std::to_string(d) + "_" + std::to_string(i),
                                 random_hermitian(d, opt.seed + 2 * i),
                                 random_hermitian(d, opt.seed + 2 * i + 1),
                                 haar_random_state(d, opt.seed + 100 + i)});
    }

    Sink sink(opt.output);
    sink.stream() << "kind,phi_param,side,epsA,epsB,residual,comm_norm,max_target_err\n";
    double worstResidual = 0, worstTarget = 0;
    for (const Case& c : cases) {
        const FixedParams fixed = fixed_params(c.A, c.B, c.state);
        const bool secondBranch = fixed.coplanar && std::cos(fixed.phi) < 0;
        const double angle = fixed.coplanar ? fixed.phi : fixed.phiPrime;
        const auto [lo, hi] = saturating_interval(angle, secondBranch);

        struct Variant {
            RelationKind kind;
            Side side;
        };
        std::vector<Variant> variants = {{RelationKind::F, Side::LOWER},
                                         {RelationKind::F, Side::UPPER},
                                         {RelationKind::G, Side::LOWER},
                                         {RelationKind::H, Side::LOWER},
                                         {RelationKind::PNAS, Side::LOWER}};
        if (is_pm1_valued(c.A) && is_pm1_valued(c.B) && fixed.coplanar) {
            variants.push_back({RelationKind::FBIS, Side::LOWER});
            variants.push_back({RelationKind::FBIS, Side::UPPER});
            if (std::abs(fixed.meanA) < 1e-10 && std::abs(fixed.meanB) < 1e-10) {
                variants.push_back({RelationKind::PRL, Side::LOWER});
                variants.push_back({RelationKind::PRL, Side::UPPER});
            }
        }

        for (const Variant& variant : variants) {
            SaturationSpec spec;
            spec.kind = variant.kind;
            spec.side = variant.side;
            apply_targets(spec, fixed, Json());
            for (int i = 0; i < opt.phiSteps; ++i) {
                spec.phi_param = lo + (hi - lo) * i / std::max(opt.phiSteps - 1, 1);
                const SaturationResult r = saturating_scheme(c.A, c.B, c.state, spec, opt.tol);
                sink.stream() << to_string(variant.kind) << ','
                              << format_double(spec.phi_param) << ',' << to_string(variant.side)
                              << ',' << format_double(r.stats.epsA) << ','
                              << format_double(r.stats.epsB) << ','
                              << format_double(r.verdict.residual) << ','
                              << format_double(r.commNorm) << ','
                              << format_double(r.maxTargetErr) << '\n';
                worstResidual = std::max(worstResidual, std::abs(r.verdict.residual));
                worstTarget = std::max(worstTarget, r.maxTargetErr);
            }
        }
    }
    std::cerr << "verify: max |residual| = " << format_double(worstResidual)
              << ", max target error = " << format_double(worstTarget) << "\n";
    return (worstResidual > opt.tol || worstTarget > opt.tol) ? 1 : 0;
}

void point_row(std::ostream& os, const FrontierPoint& p) {
    os << to_string(p.source) << ',';
    if (p.phi_param) os << format_double(*p.phi_param);
    os << ',' << format_double(p.epsA) << ',' << format_double(p.epsB) << ','
       << format_double(p.violation) << '\n';
}

int run_scan(const Options& opt) {
    const Json input = require_input(opt);
    const Observable A = observable_from_json(require_field(input, "A", opt.input));
    const Observable B = observable_from_json(require_field(input, "B", opt.input));
    const QuantumState state = state_from_json(require_field(input, "state", opt.input));
    const int n = opt.samples > 0 ? opt.samples : 2000;

    Sink sink(opt.output);
    sink.stream() << "source,phi_param,epsA,epsB,violation\n";
    for (const FrontierPoint& p : random_scan(A, B, state, n, opt.seed))
        point_row(sink.stream(), p);
    return 0;
}

int run_mixed(const Options& opt) {
    const Json input = require_input(opt);
    const Observable A = observable_from_json(require_field(input, "A", opt.input));
    const Observable B = observable_from_json(require_field(input, "B", opt.input));
    Decomposition decomp;
    if (input.contains("decomposition")) {
        decomp = decomposition_from_json(input["decomposition"]);
        if (input.contains("state")) {
            const QuantumState rho = state_from_json(input["state"]);
            if ((decomp.reconstruct() - rho.density_matrix()).cwiseAbs().maxCoeff() > 1e-10)
                throw ValidationError(opt.input + ": decomposition does not reconstruct the state");
        }
    } else if (input.contains("state")) {
        decomp = eigen_decomposition(state_from_json(input["state"]));
    } else {
        throw ParseError(opt.input + ": mixed needs a \"decomposition\" or a \"state\"");
    }

    const int steps = opt.phiSteps;
    Sink sink(opt.output);
    sink.stream() << "source,phi_param,epsA,epsB,violation\n";
    for (const FrontierPoint& p : mixed_strengthen(A, B, decomp, steps))
        point_row(sink.stream(), p);
    return 0;
}

int run_qubit_example(const Options& opt) {
    Sink sink(opt.output);
    sink.stream() << to_json(qubit_example_report()).dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Error-trade-off relations for approximate joint quantum measurements"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, int defaultPhiSteps) {
        sub->add_option("--input", opt.input, "input JSON file");
        sub->add_option("--output", opt.output, "output file (default stdout)");
        sub->add_option("--tol", opt.tol, "satisfied/saturated tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--seed", opt.seed, "random seed");
        sub->add_option("--samples", opt.samples, "sample count");
        sub->add_option("--phi-steps", opt.phiSteps, "sweep grid size")->default_val(defaultPhiSteps);
        sub->add_option("--relation", opt.relation, "relation kind");
        sub->add_option("--side", opt.side, "lower or upper error branch");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "fixed parameters, scheme statistics and all relation verdicts");
    add_common(analyze, 41);
    CLI::App* frontier = app.add_subcommand("frontier", "sweep the saturating construction of one relation");
    add_common(frontier, 41);
    CLI::App* verify = app.add_subcommand("verify", "run the saturation test matrix; nonzero exit on failure");
    add_common(verify, 21);
    CLI::App* scan = app.add_subcommand("scan", "random projective-scheme oracle cloud");
    add_common(scan, 41);
    CLI::App* mixed = app.add_subcommand("mixed", "mixed-state strengthening envelope");
    add_common(mixed, 721);
    CLI::App* qubit = app.add_subcommand("qubit-example", "worked fully-mixed-qubit report");
    add_common(qubit, 41);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return run_analyze(opt);
        if (frontier->parsed()) return run_frontier(opt);
        if (verify->parsed()) return run_verify(opt);
        if (scan->parsed()) return run_scan(opt);
        if (mixed->parsed()) return run_mixed(opt);
        if (qubit->parsed()) return run_qubit_example(opt);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
