#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spherefit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based line (0 when unknown).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class UnsupportedDimensionError : public Error {
public:
    using Error::Error;
};

/// A quadrature rule could not reach the requested exactness.
class InfeasibleDegreeError : public Error {
public:
    InfeasibleDegreeError(int degree, double residual)
        : Error("no positive quadrature rule of degree " + std::to_string(degree) +
                " (achieved residual " + std::to_string(residual) + ")"),
          degree_(degree), residual_(residual) {}

    int degree() const noexcept { return degree_; }
    double residual() const noexcept { return residual_; }

private:
    int degree_;
    double residual_;
};

class NotADesignError : public Error {
public:
    NotADesignError(int t, double residual)
        : Error("point set is not a spherical " + std::to_string(t) +
                "-design (exactness residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// The kernel system could not be factorized. `sigma_min` is the smallest
/// eigenvalue when it was computed, NaN otherwise.
class SingularMatrixError : public Error {
public:
    SingularMatrixError(const std::string& what, double sigma_min)
        : Error(what), sigma_min_(sigma_min) {}

    double sigma_min() const noexcept { return sigma_min_; }

private:
    double sigma_min_;
};

}  // namespace spherefit
