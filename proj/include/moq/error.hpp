#pragma once

#include <stdexcept>
#include <string>

namespace moq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands disagree on size, ambient dimension or modulus.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A precondition on an argument does not hold.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An enumeration or algebra would exceed the configured size budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// A mathematical invariant that the library asserts at runtime failed.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

namespace detail {

inline void ensure(bool condition, const std::string& what) {
    if (!condition) throw VerificationFailure(what);
}

inline void require(bool condition, const std::string& what) {
    if (!condition) throw InvalidArgument(what);
}

inline void require_same(bool condition, const std::string& what) {
    if (!condition) throw DimensionMismatch(what);
}

}  // namespace detail
}  // namespace moq
