#include "etr/relations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace etr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// sqrt(1 - x^2) has unbounded slope at |x| = 1, so brackets this close to
// the boundary are snapped onto it; otherwise scheme-statistics rounding
// would inflate a vanishing bound value to ~1e-8.
constexpr double kBoundarySnap = 1e-13;

/// Clamps a squared-cosine-like argument into [-1, 1], throwing once it
/// exceeds the boundary by more than the rounding slack.
double clamp_bracket(double bracket, double slack, const char* what) {
    if (std::abs(bracket) > 1.0 + slack)
        throw OutOfDomain(std::string(what) + ": argument " + std::to_string(bracket) +
                          " outside [-1, 1] beyond slack");
    if (std::abs(bracket) >= 1.0 - kBoundarySnap) return bracket >= 0 ? 1.0 : -1.0;
    return std::clamp(bracket, -1.0, 1.0);
}

double sqrt0(double x) { return std::sqrt(std::max(x, 0.0)); }

RelationVerdict core_verdict(RelationKind kind, double uA, double uB, double tildeC, double tol) {
    RelationVerdict v;
    v.kind = kind;
    v.uA = uA;
    v.uB = uB;
    v.lhs = uA * uA + uB * uB + 2.0 * sqrt0(1.0 - tildeC * tildeC) * uA * uB;
    v.rhs = tildeC * tildeC;
    v.residual = v.lhs - v.rhs;
    v.satisfied = v.residual >= -tol;
    v.saturated = std::abs(v.residual) <= tol;
    return v;
}

/// Membership verdict for the degenerate limits, where the relation
/// collapses to equality and interval constraints. The residual is the
/// most violated signed margin: equality constraints contribute -|gap|,
/// interval constraints their distance to the nearer edge.
RelationVerdict box_verdict(RelationKind kind, const std::vector<double>& margins, double tol) {
    RelationVerdict v;
    v.kind = kind;
    v.uA = kNaN;
    v.uB = kNaN;
    v.residual = *std::min_element(margins.begin(), margins.end());
    v.lhs = v.residual;
    v.rhs = 0.0;
    v.satisfied = v.residual >= -tol;
    v.saturated = std::abs(v.residual) <= tol;
    return v;
}

RelationVerdict product_verdict(RelationKind kind, double lhs, double rhs, double tol) {
    RelationVerdict v;
    v.kind = kind;
    v.uA = kNaN;
    v.uB = kNaN;
    v.lhs = lhs;
    v.rhs = rhs;
    v.residual = lhs - rhs;
    v.satisfied = v.residual >= -tol;
    v.saturated = std::abs(v.residual) <= tol;
    return v;
}

void require_pm1_moments(const FixedParams& fixed, const SchemeStats& stats) {
    if (!pm1_consistent(fixed.meanA, fixed.stdA) || !pm1_consistent(fixed.meanB, fixed.stdB))
        throw NotPm1Valued("target moments are inconsistent with +-1-valued observables");
    if (!pm1_consistent(stats.meanEstA, stats.stdEstA) ||
        !pm1_consistent(stats.meanEstB, stats.stdEstB))
        throw NotPm1Valued("estimator moments are inconsistent with +-1-valued observables");
}

} // namespace

std::string to_string(RelationKind kind) {
    switch (kind) {
    case RelationKind::F: return "F";
    case RelationKind::G: return "G";
    case RelationKind::H: return "H";
    case RelationKind::PNAS: return "PNAS";
    case RelationKind::FBIS: return "FBIS";
    case RelationKind::PRL: return "PRL";
    case RelationKind::OZAWA: return "OZAWA";
    case RelationKind::HALL: return "HALL";
    case RelationKind::WESTON: return "WESTON";
    case RelationKind::ROBERTSON: return "ROBERTSON";
    }
    return "?";
}

RelationKind relation_kind_from_string(const std::string& name) {
    std::string up;
    for (char c : name) up.push_back(static_cast<char>(std::toupper(c)));
    if (up == "F") return RelationKind::F;
    if (up == "G") return RelationKind::G;
    if (up == "H") return RelationKind::H;
    if (up == "PNAS") return RelationKind::PNAS;
    if (up == "FBIS") return RelationKind::FBIS;
    if (up == "PRL") return RelationKind::PRL;
    if (up == "OZAWA") return RelationKind::OZAWA;
    if (up == "HALL") return RelationKind::HALL;
    if (up == "WESTON") return RelationKind::WESTON;
    if (up == "ROBERTSON") return RelationKind::ROBERTSON;
    throw ValidationError("unknown relation kind: " + name);
}

double f_value(double stdA, double stdEst, double bias, double eps) {
    if (stdA <= 0 || stdEst <= 0) throw OutOfDomain("f_value requires positive deviations");
    const double bracket =
        (stdA * stdA + stdEst * stdEst - (eps * eps - bias * bias)) / (2.0 * stdA * stdEst);
    const double slack = tol::domain_slack / (2.0 * stdA * stdEst);
    return sqrt0(1.0 - std::pow(clamp_bracket(bracket, slack, "f_value"), 2));
}

double g_value(double stdA, double stdEst, double eps) {
    if (stdA <= 0 || stdEst <= 0) throw OutOfDomain("g_value requires positive deviations");
    const double bracket = (stdA * stdA + stdEst * stdEst - eps * eps) / (2.0 * stdA * stdEst);
    const double slack = tol::domain_slack / (2.0 * stdA * stdEst);
    // only the error floor |stdA - stdEst| restricts the domain; arbitrarily
    // large eps just drives the max[. , 0] clamp
    if (bracket > 1.0 + slack)
        throw OutOfDomain("g_value: eps below the absolute floor |stdA - stdEst|");
    double clamped = std::max(std::min(bracket, 1.0), 0.0);
    if (clamped >= 1.0 - kBoundarySnap) clamped = 1.0;
    return sqrt0(1.0 - clamped * clamped);
}

double h_value(double stdA, double bias, double eps) {
    if (stdA <= 0) throw OutOfDomain("h_value requires a positive target deviation");
    if (eps < std::abs(bias) - 1e-12)
        throw OutOfDomain("h_value requires eps >= |bias|");
    const double diff = eps * eps - bias * bias;
    if (diff <= kBoundarySnap * (1.0 + eps * eps + bias * bias)) return 0.0;
    return std::sqrt(diff) / stdA;
}

double f_mean_value(double meanA, double stdA, double meanEst, double eps) {
    if (stdA <= 0) throw OutOfDomain("f_mean_value requires a positive target deviation");
    if (std::abs(meanEst) >= 1.0 - 1e-12)
        throw MeanEstAtBoundary("estimator mean at +-1 pins eps; no bound function applies");
    const double denom = stdA * std::sqrt(1.0 - meanEst * meanEst);
    const double bracket = (1.0 - meanA * meanEst - eps * eps / 2.0) / denom;
    const double slack = tol::domain_slack / denom;
    return sqrt0(1.0 - std::pow(clamp_bracket(bracket, slack, "f_mean_value"), 2));
}

double k_value(double stdA, double eps) {
    if (stdA <= 0) throw OutOfDomain("k_value requires a positive target deviation");
    if (eps * eps > 4.0 + 1e-12 || eps < 0)
        throw OutOfDomain("k_value requires 0 <= eps^2 <= 4");
    double t = std::clamp(1.0 - eps * eps / 2.0, -1.0, 1.0);
    if (std::abs(t) >= 1.0 - kBoundarySnap) t = t >= 0 ? 1.0 : -1.0;
    return sqrt0(1.0 - t * t) / stdA;
}

double core_residual(double uA, double uB, double tildeC) {
    return uA * uA + uB * uB + 2.0 * sqrt0(1.0 - tildeC * tildeC) * uA * uB - tildeC * tildeC;
}

bool alt_form_satisfied(double uA, double uB, double tildeC) {
    if (uA * uA + uB * uB >= 1.0) return true;
    const double sum = uA * sqrt0(1.0 - uB * uB) + uB * sqrt0(1.0 - uA * uA);
    return sum >= std::abs(tildeC) - 1e-12;
}

bool alt_form_variant_satisfied(double uA, double uB, double tildeC) {
    if (uA * uA + uB * uB >= tildeC * tildeC) return true;
    const double sum = uA * sqrt0(1.0 - uB * uB) + uB * sqrt0(1.0 - uA * uA);
    return sum >= std::abs(tildeC) - 1e-12;
}

std::pair<double, double> saturating_interval(double angle, bool secondBranch) {
    const double a = std::abs(angle);
    if (secondBranch) return {a, 2.0 * M_PI - a};
    return {-a, a};
}

std::pair<double, double> saturating_u(double phi_param, double angle, bool secondBranch) {
    const auto [lo, hi] = saturating_interval(angle, secondBranch);
    if (phi_param < lo - 1e-12 || phi_param > hi + 1e-12)
        throw OutOfInterval("phi_param " + std::to_string(phi_param) + " outside [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return {std::abs(std::sin((phi_param + angle) / 2.0)),
            std::abs(std::sin((phi_param - angle) / 2.0))};
}

double ozawa_residual(const FixedParams& fixed, double epsA, double epsB) {
    return epsA * epsB + fixed.stdB * epsA + fixed.stdA * epsB - std::abs(fixed.cAB);
}

double hall_residual(const SchemeStats& stats, const FixedParams& fixed) {
    return stats.epsA * stats.epsB + stats.stdEstB * stats.epsA + stats.stdEstA * stats.epsB -
           std::abs(fixed.cAB);
}

double weston_residual(const SchemeStats& stats, const FixedParams& fixed) {
    return (fixed.stdB + stats.stdEstB) / 2.0 * stats.epsA +
           (fixed.stdA + stats.stdEstA) / 2.0 * stats.epsB - std::abs(fixed.cAB);
}

namespace {

void require_core_premise(double uA, double uB, double X, double Y, double tildeC) {
    if (uA < -1e-12 || uA > 1.0 + 1e-12 || uB < -1e-12 || uB > 1.0 + 1e-12)
        throw PreconditionViolated("u values must lie in [0, 1]");
    if (X < 0 || Y < 0) throw PreconditionViolated("X and Y must be non-negative");
    if (core_residual(uA, uB, tildeC) < -1e-12)
        throw PreconditionViolated("(uA, uB, tildeC) violate the core relation");
}

double deviation_term(double u, double shift) {
    const double c = sqrt0(1.0 - u * u) - shift;
    return std::sqrt(u * u + c * c);
}

} // namespace

double cauchy3_bound(double uA, double uB, double X, double Y, double tildeC) {
    require_core_premise(uA, uB, X, Y, tildeC);
    const double sA = deviation_term(std::clamp(uA, 0.0, 1.0), X);
    const double sB = deviation_term(std::clamp(uB, 0.0, 1.0), Y);
    return sA * sB + Y * sA + X * sB - std::abs(tildeC);
}

double cauchy4_bound(double uA, double uB, double X, double Y, double tildeC) {
    require_core_premise(uA, uB, X, Y, tildeC);
    const double sA = deviation_term(std::clamp(uA, 0.0, 1.0), X);
    const double sB = deviation_term(std::clamp(uB, 0.0, 1.0), Y);
    return (1.0 + Y) / 2.0 * sA + (1.0 + X) / 2.0 * sB - std::abs(tildeC);
}

double lemma_check(const LemmaVectors& vectors) {
    const auto& a = vectors.aHat;
    const auto& b = vectors.bHat;
    const auto& x = vectors.xHat;
    const auto& y = vectors.yHat;
    const auto n = a.size();
    if (b.size() != n || x.size() != n || y.size() != n)
        throw InvalidVectors("lemma vectors must have equal length");
    for (const auto* v : {&a, &b, &x, &y})
        if (std::abs(v->norm() - 1.0) > 1e-12) throw InvalidVectors("lemma vectors must be unit");
    if (std::abs(x.dot(y)) > 1e-12) throw InvalidVectors("xHat and yHat must be orthogonal");

    const double chi = a.dot(b);
    const double aPerp = sqrt0(1.0 - std::pow(a.dot(x), 2));
    const double bPerp = sqrt0(1.0 - std::pow(b.dot(y), 2));
    return aPerp * aPerp + bPerp * bPerp + 2.0 * sqrt0(1.0 - chi * chi) * aPerp * bPerp -
           chi * chi;
}

RelationVerdict evaluate_relation(RelationKind kind, const FixedParams& fixed,
                                  const SchemeStats& stats, double tol) {
    const double deg = tol::degenerate_std;
    switch (kind) {
    case RelationKind::ROBERTSON:
        return product_verdict(kind, fixed.stdA * fixed.stdB, std::abs(fixed.cAB), tol);
    case RelationKind::OZAWA:
        return product_verdict(kind,
                               stats.epsA * stats.epsB + fixed.stdB * stats.epsA +
                                   fixed.stdA * stats.epsB,
                               std::abs(fixed.cAB), tol);
    case RelationKind::HALL:
        return product_verdict(kind,
                               stats.epsA * stats.epsB + stats.stdEstB * stats.epsA +
                                   stats.stdEstA * stats.epsB,
                               std::abs(fixed.cAB), tol);
    case RelationKind::WESTON:
        return product_verdict(kind,
                               (fixed.stdB + stats.stdEstB) / 2.0 * stats.epsA +
                                   (fixed.stdA + stats.stdEstA) / 2.0 * stats.epsB,
                               std::abs(fixed.cAB), tol);
    case RelationKind::PNAS:
        return core_verdict(kind, stats.epsA / fixed.stdA, stats.epsB / fixed.stdB, fixed.tildeC,
                            tol);
    case RelationKind::H:
        return core_verdict(kind, h_value(fixed.stdA, stats.biasA, stats.epsA),
                            h_value(fixed.stdB, stats.biasB, stats.epsB), fixed.tildeC, tol);
    case RelationKind::G: {
        if (stats.stdEstA <= deg || stats.stdEstB <= deg) {
            std::vector<double> margins;
            if (stats.stdEstA <= deg) {
                margins.push_back(stats.epsA * stats.epsA - fixed.stdA * fixed.stdA);
                const double edge = fixed.stdB - stats.stdEstB;
                margins.push_back(stats.epsB * stats.epsB - edge * edge);
            }
            if (stats.stdEstB <= deg) {
                const double edge = fixed.stdA - stats.stdEstA;
                margins.push_back(stats.epsA * stats.epsA - edge * edge);
                margins.push_back(stats.epsB * stats.epsB - fixed.stdB * fixed.stdB);
            }
            return box_verdict(kind, margins, tol);
        }
        return core_verdict(kind, g_value(fixed.stdA, stats.stdEstA, stats.epsA),
                            g_value(fixed.stdB, stats.stdEstB, stats.epsB), fixed.tildeC, tol);
    }
    case RelationKind::F: {
        if (stats.stdEstA <= deg || stats.stdEstB <= deg) {
            std::vector<double> margins;
            if (stats.stdEstA <= deg) {
                margins.push_back(-std::abs(stats.epsA * stats.epsA -
                                            (fixed.stdA * fixed.stdA + stats.biasA * stats.biasA)));
            } else {
                const auto [lo, hi] = variance_triangle(fixed, stats.stdEstA, stats.biasA, Target::A);
                margins.push_back(stats.epsA * stats.epsA - lo);
                margins.push_back(hi - stats.epsA * stats.epsA);
            }
            if (stats.stdEstB <= deg) {
                margins.push_back(-std::abs(stats.epsB * stats.epsB -
                                            (fixed.stdB * fixed.stdB + stats.biasB * stats.biasB)));
            } else {
                const auto [lo, hi] = variance_triangle(fixed, stats.stdEstB, stats.biasB, Target::B);
                margins.push_back(stats.epsB * stats.epsB - lo);
                margins.push_back(hi - stats.epsB * stats.epsB);
            }
            return box_verdict(kind, margins, tol);
        }
        return core_verdict(kind, f_value(fixed.stdA, stats.stdEstA, stats.biasA, stats.epsA),
                            f_value(fixed.stdB, stats.stdEstB, stats.biasB, stats.epsB),
                            fixed.tildeC, tol);
    }
    case RelationKind::FBIS: {
        require_pm1_moments(fixed, stats);
        const bool atA = std::abs(stats.meanEstA) >= 1.0 - 1e-12;
        const bool atB = std::abs(stats.meanEstB) >= 1.0 - 1e-12;
        if (atA || atB) {
            auto pinned_margin = [](double eps, double meanTarget, double meanEst) {
                const double sign = meanEst >= 0 ? 1.0 : -1.0;
                return -std::abs(eps * eps / 2.0 - (1.0 - sign * meanTarget));
            };
            std::vector<double> margins;
            if (atA) {
                margins.push_back(pinned_margin(stats.epsA, fixed.meanA, stats.meanEstA));
            } else {
                const auto [lo, hi] = pm1_bounds(fixed, stats.meanEstA, Target::A);
                margins.push_back(stats.epsA * stats.epsA / 2.0 - lo);
                margins.push_back(hi - stats.epsA * stats.epsA / 2.0);
            }
            if (atB) {
                margins.push_back(pinned_margin(stats.epsB, fixed.meanB, stats.meanEstB));
            } else {
                const auto [lo, hi] = pm1_bounds(fixed, stats.meanEstB, Target::B);
                margins.push_back(stats.epsB * stats.epsB / 2.0 - lo);
                margins.push_back(hi - stats.epsB * stats.epsB / 2.0);
            }
            return box_verdict(kind, margins, tol);
        }
        return core_verdict(kind, f_mean_value(fixed.meanA, fixed.stdA, stats.meanEstA, stats.epsA),
                            f_mean_value(fixed.meanB, fixed.stdB, stats.meanEstB, stats.epsB),
                            fixed.tildeC, tol);
    }
    case RelationKind::PRL:
        require_pm1_moments(fixed, stats);
        return core_verdict(kind, k_value(fixed.stdA, stats.epsA), k_value(fixed.stdB, stats.epsB),
                            fixed.tildeC, tol);
    }
    throw ValidationError("unhandled relation kind");
}

std::vector<RelationVerdict> evaluate_all_relations(const FixedParams& fixed,
                                                    const SchemeStats& stats, double tol) {
    std::vector<RelationVerdict> out;
    for (RelationKind kind :
         {RelationKind::F, RelationKind::G, RelationKind::H, RelationKind::PNAS,
          RelationKind::FBIS, RelationKind::PRL, RelationKind::OZAWA, RelationKind::HALL,
          RelationKind::WESTON, RelationKind::ROBERTSON}) {
        try {
            out.push_back(evaluate_relation(kind, fixed, stats, tol));
        } catch (const NotPm1Valued&) {
            // FBIS/PRL only apply to same-spectrum +-1 data; skip otherwise.
        }
    }
    return out;
}

} // namespace etr
