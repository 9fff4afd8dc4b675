#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace minding {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is a 0-based byte offset into the source.
class ParseError : public Error {
public:
    enum class Kind { Syntax, UnknownIdentifier };

    ParseError(Kind kind, std::size_t offset, std::vector<std::string> expected, const std::string& message)
        : Error(message), kind_(kind), offset_(offset), expected_(std::move(expected)) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    Kind kind_;
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Division by zero or a non-finite intermediate value during evaluation.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& message, std::string subtree)
        : Error(message + " in `" + subtree + "`"), subtree_(std::move(subtree)) {}

    const std::string& subtree() const noexcept { return subtree_; }

private:
    std::string subtree_;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& message, std::complex<double> best_estimate, double error_bound)
        : Error(message), best_estimate_(best_estimate), error_bound_(error_bound) {}

    std::complex<double> best_estimate() const noexcept { return best_estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    std::complex<double> best_estimate_;
    double error_bound_;
};

/// A point fell outside the domain on which a constructed object is valid,
/// or no admissible domain could be found.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A finite-difference stencil reached outside the domain under test.
class StencilError : public Error {
public:
    using Error::Error;
};

/// An improper integral does not converge.
class DivergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace minding
