#pragma once

#include <stdexcept>
#include <string>

namespace etr {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- construction / validation ---

class NotHermitian : public Error {
public:
    NotHermitian(double deviation)
        : Error("matrix is not Hermitian (max |M - M^dagger| = " + std::to_string(deviation) + ")"),
          deviation(deviation) {}
    double deviation;
};

class BadDimension : public Error {
public:
    explicit BadDimension(const std::string& msg) : Error(msg) {}
};

class NotNormalized : public Error {
public:
    NotNormalized(double norm)
        : Error("state vector norm " + std::to_string(norm) + " deviates from 1 by more than 1e-6"),
          norm(norm) {}
    double norm;
};

class NotDensityMatrix : public Error {
public:
    explicit NotDensityMatrix(const std::string& msg) : Error(msg) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

class NonRealExpectation : public Error {
public:
    NonRealExpectation(double imag)
        : Error("expectation has imaginary part " + std::to_string(imag) + " above tolerance"),
          imag(imag) {}
    double imag;
};

class DegenerateObservable : public Error {
public:
    explicit DegenerateObservable(const std::string& msg) : Error(msg) {}
};

// --- schemes ---

class NonCommuting : public Error {
public:
    NonCommuting(double comm_norm)
        : Error("estimator pair does not commute (||[A,B]||_F = " + std::to_string(comm_norm) + ")"),
          comm_norm(comm_norm) {}
    double comm_norm;
};

class NotPm1Valued : public Error {
public:
    explicit NotPm1Valued(const std::string& msg) : Error(msg) {}
};

// --- bound functions ---

class OutOfDomain : public Error {
public:
    explicit OutOfDomain(const std::string& msg) : Error(msg) {}
};

class MeanEstAtBoundary : public Error {
public:
    explicit MeanEstAtBoundary(const std::string& msg) : Error(msg) {}
};

class PreconditionViolated : public Error {
public:
    explicit PreconditionViolated(const std::string& msg) : Error(msg) {}
};

class InvalidVectors : public Error {
public:
    explicit InvalidVectors(const std::string& msg) : Error(msg) {}
};

// --- saturating constructions ---

class OutOfInterval : public Error {
public:
    explicit OutOfInterval(const std::string& msg) : Error(msg) {}
};

class MissingTarget : public Error {
public:
    explicit MissingTarget(const std::string& msg) : Error(msg) {}
};

class SingularAngle : public Error {
public:
    explicit SingularAngle(const std::string& msg) : Error(msg) {}
};

class BranchMismatch : public Error {
public:
    explicit BranchMismatch(const std::string& msg) : Error(msg) {}
};

class UnsupportedSide : public Error {
public:
    explicit UnsupportedSide(const std::string& msg) : Error(msg) {}
};

// --- I/O ---

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

} // namespace etr
