#include "etr/qcore.hpp"

#include <cmath>
#include <random>

namespace etr {

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix random_gaussian(int dim, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            g(i, j) = Complex(dist(engine), dist(engine));
    return g;
}

} // namespace

Matrix QuantumState::density_matrix() const {
    if (is_pure()) return pure_ * pure_.adjoint();
    return density_;
}

Observable validate_observable(const Matrix& raw) {
    if (raw.rows() != raw.cols())
        throw BadDimension("observable matrix must be square");
    if (raw.rows() < 2)
        throw BadDimension("observable dimension must be at least 2");
    const double dev = max_abs(raw - raw.adjoint());
    if (dev > tol::hermitian) throw NotHermitian(dev);
    return Observable(raw);
}

QuantumState make_state(const Vector& raw) {
    if (raw.size() < 2) throw BadDimension("state dimension must be at least 2");
    const double norm = raw.norm();
    if (std::abs(norm - 1.0) > tol::state_norm_reject) throw NotNormalized(norm);
    QuantumState s;
    s.dim_ = static_cast<int>(raw.size());
    s.pure_ = raw / norm;
    return s;
}

QuantumState make_state(const Matrix& raw) {
    if (raw.rows() != raw.cols() || raw.rows() < 2)
        throw BadDimension("density matrix must be square with dimension at least 2");
    if (max_abs(raw - raw.adjoint()) > tol::hermitian)
        throw NotDensityMatrix("density matrix is not Hermitian");
    if (std::abs(raw.trace().real() - 1.0) > tol::density_trace ||
        std::abs(raw.trace().imag()) > tol::density_trace)
        throw NotDensityMatrix("density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es(raw, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol::density_eig_floor)
        throw NotDensityMatrix("density matrix has a negative eigenvalue");
    QuantumState s;
    s.dim_ = static_cast<int>(raw.rows());
    s.density_ = raw;
    return s;
}

Complex raw_expectation(const Matrix& m, const QuantumState& state) {
    if (m.rows() != state.dim())
        throw DimensionMismatch("operator and state dimensions differ");
    if (state.is_pure())
        return state.amplitudes().dot(m * state.amplitudes());
    return (m * state.density_matrix()).trace();
}

double expectation(const Observable& obs, const QuantumState& state) {
    const Complex value = raw_expectation(obs.matrix(), state);
    if (std::abs(value.imag()) > tol::real_expectation) throw NonRealExpectation(value.imag());
    return value.real();
}

double operator_rms(const Matrix& m, const QuantumState& state) {
    if (m.cols() != state.dim())
        throw DimensionMismatch("operator and state dimensions differ");
    if (state.is_pure()) return (m * state.amplitudes()).norm();
    Eigen::SelfAdjointEigenSolver<Matrix> es(state.density_matrix());
    double sum = 0;
    for (int i = 0; i < state.dim(); ++i) {
        const double w = es.eigenvalues()(i);
        if (w <= 0) continue;
        sum += w * (m * es.eigenvectors().col(i)).squaredNorm();
    }
    return std::sqrt(sum);
}

double std_dev(const Observable& obs, const QuantumState& state) {
    const double mean = expectation(obs, state);
    const int d = obs.dim();
    return operator_rms(obs.matrix() - mean * Matrix::Identity(d, d), state);
}

Observable reduced_observable(const Observable& obs, const QuantumState& state) {
    const double mean = expectation(obs, state);
    const double std = std_dev(obs, state);
    if (std <= tol::degenerate_std)
        throw DegenerateObservable("observable has vanishing deviation on this state");
    const int d = obs.dim();
    return validate_observable((obs.matrix() - mean * Matrix::Identity(d, d)) / std);
}

FixedParams fixed_params(const Observable& A, const Observable& B, const QuantumState& state) {
    if (A.dim() != B.dim() || A.dim() != state.dim())
        throw DimensionMismatch("fixed_params requires matching dimensions");
    FixedParams p;
    p.meanA = expectation(A, state);
    p.meanB = expectation(B, state);
    p.stdA = std_dev(A, state);
    p.stdB = std_dev(B, state);
    if (p.stdA <= tol::degenerate_std || p.stdB <= tol::degenerate_std)
        throw DegenerateObservable("fixed_params requires non-degenerate target deviations");

    const Observable a0 = reduced_observable(A, state);
    const Observable b0 = reduced_observable(B, state);
    if (state.is_pure())
        p.corr = state.amplitudes().dot(a0.matrix() * (b0.matrix() * state.amplitudes()));
    else
        p.corr = (a0.matrix() * b0.matrix() * state.density_matrix()).trace();

    p.tildeC = p.corr.imag();
    p.cAB = p.tildeC * p.stdA * p.stdB;
    p.r = std::abs(p.corr);
    p.phi = (p.r == 0.0) ? 0.0 : std::arg(p.corr);
    p.phiPrime = std::asin(std::clamp(p.tildeC, -1.0, 1.0));
    const double cPhiPrime = std::cos(p.phiPrime);
    if (cPhiPrime > 0) p.q = std::cos(p.phi) / cPhiPrime;
    p.coplanar = p.r >= 1.0 - tol::coplanar;
    return p;
}

QuantumState haar_random_state(int dim, std::uint64_t seed) {
    if (dim < 2) throw BadDimension("state dimension must be at least 2");
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex(dist(engine), dist(engine));
    return make_state(Vector(v / v.norm()));
}

Observable random_hermitian(int dim, std::uint64_t seed) {
    if (dim < 2) throw BadDimension("observable dimension must be at least 2");
    const Matrix g = random_gaussian(dim, seed);
    return validate_observable((g + g.adjoint()) / 2.0);
}

Matrix haar_random_unitary(int dim, std::uint64_t seed) {
    if (dim < 2) throw BadDimension("unitary dimension must be at least 2");
    const Matrix g = random_gaussian(dim, seed);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    // Fix the phase ambiguity of QR so the distribution is Haar.
    const Matrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i) {
        const Complex d = rmat(i, i);
        if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
    }
    return q;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Vector kron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

bool is_pm1_valued(const Observable& obs) {
    const int d = obs.dim();
    return max_abs(obs.matrix() * obs.matrix() - Matrix::Identity(d, d)) <= 1e-10;
}

QuantumState purify(const QuantumState& state) {
    if (state.is_pure()) return state;
    Eigen::SelfAdjointEigenSolver<Matrix> es(state.density_matrix());
    const int d = state.dim();
    // Keep eigenvectors with non-negligible weight; rank of the purifying factor.
    std::vector<int> kept;
    for (int i = 0; i < d; ++i)
        if (es.eigenvalues()(i) > 1e-14) kept.push_back(i);
    const int m = static_cast<int>(kept.size());
    Vector psi = Vector::Zero(d * m);
    for (int j = 0; j < m; ++j) {
        const double w = std::sqrt(es.eigenvalues()(kept[j]));
        const Vector u = es.eigenvectors().col(kept[j]);
        for (int i = 0; i < d; ++i) psi(i * m + j) = w * u(i);
    }
    return make_state(psi);
}

Observable pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return validate_observable(m);
}

Observable pauli_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return validate_observable(m);
}

Observable pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return validate_observable(m);
}

} // namespace etr
