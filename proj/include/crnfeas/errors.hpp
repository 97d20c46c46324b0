#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crnfeas {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by the network parser; carries the offending source location.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Raised when vector/matrix dimensions do not match an operation's contract.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

/// Raised when a sign enumeration would exceed the configured ambient-dimension cap.
class CapacityError : public Error {
public:
    CapacityError(std::size_t ambient, std::size_t cap)
        : Error("sign enumeration capacity exceeded: ambient dimension " + std::to_string(ambient) +
                " > cap " + std::to_string(cap)),
          ambient_(ambient),
          cap_(cap) {}

    std::size_t ambient() const { return ambient_; }
    std::size_t cap() const { return cap_; }

private:
    std::size_t ambient_;
    std::size_t cap_;
};

/// Raised when a matrix expected in paired (doubled) column form violates the
/// convention column(i+r) == -column(i).
class PairingError : public Error {
public:
    explicit PairingError(const std::string& what) : Error(what) {}
};

/// Raised by the ODE integrator when the adaptive step size underflows.
class StepUnderflowError : public Error {
public:
    explicit StepUnderflowError(const std::string& what) : Error(what) {}
};

/// Raised when the two branches of a theorem-of-alternatives both succeed or
/// both fail. This indicates a bug in the solver, never a property of the input.
class InternalInconsistencyError : public Error {
public:
    explicit InternalInconsistencyError(const std::string& what) : Error(what) {}
};

}  // namespace crnfeas
