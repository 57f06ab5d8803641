#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace isospec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument: degenerate domain, grid mismatch, out-of-range count.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Non-finite or otherwise unusable input data.
class InvalidInput : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    SolverError(const std::string& what, std::size_t iterations)
        : Error(what), iterations_(iterations) {}

    std::size_t iterations() const noexcept { return iterations_; }

private:
    std::size_t iterations_;
};

/// The zero mode has nodes, so the factorization H = A^dagger A does not exist.
class BrokenSusyError : public Error {
public:
    BrokenSusyError(const std::string& what, std::size_t sign_changes)
        : Error(what), sign_changes_(sign_changes) {}

    std::size_t sign_changes() const noexcept { return sign_changes_; }

private:
    std::size_t sign_changes_;
};

class WindowTooSmallError : public Error {
public:
    WindowTooSmallError(const std::string& what, std::size_t points)
        : Error(what), points_(points) {}

    std::size_t points() const noexcept { return points_; }

private:
    std::size_t points_;
};

/// A deformation parameter for which lambda + I(x) vanishes somewhere on the grid.
class SingularParameterError : public Error {
public:
    SingularParameterError(const std::string& what, double lambda, double excluded_lo,
                           double excluded_hi, std::optional<double> offending_x,
                           std::optional<std::size_t> step = std::nullopt)
        : Error(what),
          lambda_(lambda),
          excluded_lo_(excluded_lo),
          excluded_hi_(excluded_hi),
          offending_x_(offending_x),
          step_(step) {}

    double lambda() const noexcept { return lambda_; }
    double excluded_lo() const noexcept { return excluded_lo_; }
    double excluded_hi() const noexcept { return excluded_hi_; }
    std::optional<double> offending_x() const noexcept { return offending_x_; }
    /// Index of the chain step that failed, when raised from a deformation chain.
    std::optional<std::size_t> step() const noexcept { return step_; }

private:
    double lambda_;
    double excluded_lo_;
    double excluded_hi_;
    std::optional<double> offending_x_;
    std::optional<std::size_t> step_;
};

/// lambda sits on the lower end of the excluded interval (Abraham-Moses limit).
class AbrahamMosesLimitError : public SingularParameterError {
public:
    using SingularParameterError::SingularParameterError;
};

/// lambda sits on the upper end of the excluded interval (Pursey limit).
class PurseyLimitError : public SingularParameterError {
public:
    using SingularParameterError::SingularParameterError;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line) : Error(what), line_(line) {}

    /// 1-based line number in the offending file; 0 when not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace isospec
