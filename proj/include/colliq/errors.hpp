#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace colliq {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Incompatible matrix or block dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Invalid argument value (out-of-range index, empty input, bad option).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Evaluation point outside the open polydisc or unit ball.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Linear system singular to working precision.
class SingularMatrixError : public Error {
public:
    SingularMatrixError(const std::string& what, double condition_estimate)
        : Error(what), condition_estimate(condition_estimate) {}
    double condition_estimate = 0.0;
};

/// An operation required an isometric colligation and the input was not.
class NotIsometricError : public Error {
public:
    NotIsometricError(const std::string& what, double residual)
        : Error(what), residual(residual) {}
    double residual = 0.0;
};

/// A structural precondition (block pattern) does not hold.
class StructureError : public Error {
public:
    using Error::Error;
};

/// The constant term vanishes and the requested operation needs it nonzero.
class ZeroConstantError : public Error {
public:
    using Error::Error;
};

/// An internal consistency or verification grid check failed.
class VerificationError : public Error {
public:
    using Error::Error;
};

/// Malformed document text.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what), line(line), column(column) {}
    std::size_t line = 0;
    std::size_t column = 0;
};

/// Well-formed document with an invalid shape or field.
class SchemaError : public Error {
public:
    SchemaError(const std::string& what, std::string path)
        : Error(what), path(std::move(path)) {}
    std::string path;
};

} // namespace colliq
