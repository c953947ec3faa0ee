#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>

#include "etr/errors.hpp"

namespace etr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace tol {
// Absolute tolerances on operator-norm-1-scale quantities; matrices are
// stored dense (dimensions ~16 at most).
inline constexpr double hermitian = 1e-12;
inline constexpr double state_norm_reject = 1e-6;
inline constexpr double density_eig_floor = 1e-10;
inline constexpr double density_trace = 1e-10;
inline constexpr double real_expectation = 1e-12;
inline constexpr double degenerate_std = 1e-10;
inline constexpr double coplanar = 1e-9;       // r >= 1 - coplanar selects the 2-D construction
inline constexpr double commutator_rel = 1e-10;
inline constexpr double domain_slack = 1e-9;   // clamping slack for bound-function arguments
inline constexpr double verdict = 1e-9;        // default satisfied/saturated tolerance
inline constexpr double overlap_floor = 1e-12; // weak-value defaulting threshold
} // namespace tol

/// Hermitian operator on a finite-dimensional Hilbert space.
class Observable {
public:
    Observable() = default;

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const Matrix& matrix() const { return matrix_; }

private:
    friend Observable validate_observable(const Matrix& raw);
    explicit Observable(Matrix m) : matrix_(std::move(m)) {}
    Matrix matrix_;
};

/// Pure unit vector or density matrix (Hermitian, PSD, unit trace).
class QuantumState {
public:
    QuantumState() = default;

    int dim() const { return dim_; }
    bool is_pure() const { return pure_.size() > 0; }
    /// Amplitude vector; only valid for pure states.
    const Vector& amplitudes() const { return pure_; }
    /// Density-matrix form (materialized from the amplitudes if pure).
    Matrix density_matrix() const;

private:
    friend QuantumState make_state(const Vector& raw);
    friend QuantumState make_state(const Matrix& raw);
    int dim_ = 0;
    Vector pure_;
    Matrix density_;
};

/// Quantities of an (A, B, state) triple that every trade-off relation
/// consumes; fixed once the targets and the state are fixed.
struct FixedParams {
    double meanA = 0;   // <A>
    double meanB = 0;   // <B>
    double stdA = 0;    // standard deviation of A on the state
    double stdB = 0;
    double cAB = 0;     // (1/2i) <[A,B]>
    double tildeC = 0;  // cAB / (stdA stdB) = Im corr
    Complex corr;       // <A0 B0> for the reduced observables
    double r = 0;       // |corr|
    double phi = 0;     // arg corr, in [-pi, pi]; 0 when corr = 0
    double phiPrime = 0;            // arcsin(tildeC)
    std::optional<double> q;        // cos(phi)/cos(phiPrime), set when cos(phiPrime) > 0
    bool coplanar = false;          // r >= 1 - 1e-9
};

// --- operations ---

/// Checks Hermiticity and dimension; returns the validated observable.
Observable validate_observable(const Matrix& raw);

/// Validates a pure state; vectors with norm off by more than 1e-6 are
/// rejected rather than silently renormalized.
QuantumState make_state(const Vector& raw);
/// Validates a density matrix (Hermitian, PSD up to -1e-10, unit trace).
QuantumState make_state(const Matrix& raw);

/// <psi|M|psi> or Tr[M rho]; the imaginary residue is checked against
/// 1e-12 and discarded.
double expectation(const Observable& obs, const QuantumState& state);

/// <psi|M|psi> or Tr[M rho] for an arbitrary (not necessarily Hermitian)
/// matrix; no validation, complex result.
Complex raw_expectation(const Matrix& m, const QuantumState& state);

/// sqrt(<M^dagger M>) on a state, computed through vector norms so that
/// near-zero values do not suffer cancellation.
double operator_rms(const Matrix& m, const QuantumState& state);

/// Standard deviation sqrt(<M^2> - <M>^2) of an observable on a state.
double std_dev(const Observable& obs, const QuantumState& state);

/// (A - <A>)/dA, with zero mean and unit deviation on the given state.
Observable reduced_observable(const Observable& obs, const QuantumState& state);

FixedParams fixed_params(const Observable& A, const Observable& B, const QuantumState& state);

/// Haar-uniform pure state (normalized complex Gaussian); deterministic per seed.
QuantumState haar_random_state(int dim, std::uint64_t seed);

/// (G + G^dagger)/2 for complex Gaussian G; deterministic per seed.
Observable random_hermitian(int dim, std::uint64_t seed);

/// Haar-distributed unitary via QR of a complex Gaussian matrix.
Matrix haar_random_unitary(int dim, std::uint64_t seed);

// --- helpers ---

/// Kronecker product a (x) b.
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

/// True when M^2 = identity within 1e-10 (all eigenvalues are +-1).
bool is_pm1_valued(const Observable& obs);

/// Purification of a state: a pure state on dim * rank whose partial
/// trace over the second factor reproduces the density matrix.
QuantumState purify(const QuantumState& state);

Observable pauli_x();
Observable pauli_y();
Observable pauli_z();

} // namespace etr
