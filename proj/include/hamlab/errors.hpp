#pragma once

#include <stdexcept>
#include <string>

namespace hamlab {

/// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An enumeration or search ran past its caller-supplied cap.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Malformed input text (hypergraph files, CLI instance descriptors).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Exact integer arithmetic left the 64-bit range.
class OverflowError : public Error {
public:
    using Error::Error;
};

inline auto require(bool condition, const std::string& message) -> void {
    if (!condition) throw PreconditionError(message);
}

}  // namespace hamlab
