#pragma once

#include <string>
#include <vector>

#include "etr/scheme.hpp"

namespace etr {

/// The implemented error-trade-off relations. F/G/H/PNAS/FBIS/PRL share the
/// core quadratic form in their bound functions; OZAWA/HALL/WESTON are the
/// weaker historical relations; ROBERTSON is the preparation-uncertainty bound.
enum class RelationKind { F, G, H, PNAS, FBIS, PRL, OZAWA, HALL, WESTON, ROBERTSON };

std::string to_string(RelationKind kind);
RelationKind relation_kind_from_string(const std::string& name);

struct RelationVerdict {
    RelationKind kind = RelationKind::PNAS;
    double uA = 0; // bound-function values; NaN when not applicable
    double uB = 0;
    double lhs = 0;
    double rhs = 0;
    double residual = 0; // lhs - rhs
    bool satisfied = false;
    bool saturated = false;
};

/// Unit vectors of a Euclidean space entering the geometric lemma:
/// aHat, bHat arbitrary, xHat orthogonal to yHat.
struct LemmaVectors {
    Eigen::VectorXd aHat, bHat, xHat, yHat;
};

// --- bound functions ---
// Square-root arguments within 1e-9 of the domain boundary are clamped;
// beyond that the functions throw OutOfDomain.

/// sqrt(1 - [(dA^2 + dEst^2 - (eps^2 - bias^2)) / (2 dA dEst)]^2).
double f_value(double stdA, double stdEst, double bias, double eps);

/// sqrt(1 - max[(dA^2 + dEst^2 - eps^2) / (2 dA dEst), 0]^2); non-decreasing in eps.
double g_value(double stdA, double stdEst, double eps);

/// sqrt(eps^2 - bias^2) / dA.
double h_value(double stdA, double bias, double eps);

/// sqrt(1 - [(1 - <A><est> - eps^2/2) / (dA sqrt(1 - <est>^2))]^2),
/// for +-1-valued target and estimator.
double f_mean_value(double meanA, double stdA, double meanEst, double eps);

/// sqrt(1 - (1 - eps^2/2)^2) / dA, for +-1-valued target and estimator.
double k_value(double stdA, double eps);

/// uA^2 + uB^2 + 2 sqrt(1 - tildeC^2) uA uB - tildeC^2.
double core_residual(double uA, double uB, double tildeC);

/// Equivalent two-branch form of the core relation:
/// uA^2 + uB^2 >= 1, or else uA sqrt(1-uB^2) + uB sqrt(1-uA^2) >= |tildeC|.
bool alt_form_satisfied(double uA, double uB, double tildeC);

/// Variant of the alternative form with tildeC^2 as the branch threshold.
bool alt_form_variant_satisfied(double uA, double uB, double tildeC);

/// The (uA, uB) pair saturating the core relation at a sweep angle:
/// (|sin((phi_param + angle)/2)|, |sin((phi_param - angle)/2)|), where
/// sin(angle) is the tildeC of the relation. With secondBranch the sweep
/// runs over [|angle|, 2pi - |angle|] (the cos(angle) <= 0 interval);
/// otherwise over [-|angle|, |angle|].
std::pair<double, double> saturating_u(double phi_param, double angle, bool secondBranch = false);

/// Admissible phi_param interval for saturating_u.
std::pair<double, double> saturating_interval(double angle, bool secondBranch = false);

// --- historical relations (residual = lhs - |C_AB|) ---

double ozawa_residual(const FixedParams& fixed, double epsA, double epsB);
double hall_residual(const SchemeStats& stats, const FixedParams& fixed);
double weston_residual(const SchemeStats& stats, const FixedParams& fixed);

/// Residual of the three-term Cauchy-Schwarz decomposition bound, valid for
/// any X, Y >= 0 once (uA, uB, tildeC) satisfy the core relation.
double cauchy3_bound(double uA, double uB, double X, double Y, double tildeC);

/// Residual of the four-term decomposition bound under the same premise.
double cauchy4_bound(double uA, double uB, double X, double Y, double tildeC);

/// Residual of the geometric lemma for the given vectors.
double lemma_check(const LemmaVectors& vectors);

RelationVerdict evaluate_relation(RelationKind kind, const FixedParams& fixed,
                                  const SchemeStats& stats, double tol = tol::verdict);

std::vector<RelationVerdict> evaluate_all_relations(const FixedParams& fixed,
                                                    const SchemeStats& stats,
                                                    double tol = tol::verdict);

} // namespace etr
