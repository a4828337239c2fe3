#pragma once

#include <stdexcept>
#include <string>

namespace mixfrac {

/// Base class for all artifact errors so callers can catch one type.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : Error {
    using Error::Error;
};

struct ShapeMismatch : Error {
    using Error::Error;
};

struct SingularMatrix : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

struct NotFullRank : Error {
    using Error::Error;
};

struct IncompatibleGrid : Error {
    using Error::Error;
};

struct PreconditionViolated : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

} // namespace mixfrac
