#ifndef MGC_ERRORS_HPP
#define MGC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mgc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

struct UnknownVertex : Error {
    using Error::Error;
};

/// Thrown when an operation requires an acyclic directed part.
struct NotAcyclic : Error {
    using Error::Error;
};

struct NotChainGraph : Error {
    using Error::Error;
};

/// Malformed separation/trek query (u == v, endpoint inside the
/// conditioning set, duplicate sources, non-digraph input, ...).
struct BadQuery : Error {
    using Error::Error;
};

struct SizeMismatch : Error {
    using Error::Error;
};

struct SupportViolation : Error {
    using Error::Error;
};

struct NotPositiveDefinite : Error {
    using Error::Error;
};

struct SingularBlock : Error {
    using Error::Error;
};

struct NotDecomposable : Error {
    using Error::Error;
};

struct ConvergenceFailure : Error {
    using Error::Error;
};

/// Enumeration exceeded its configured cap; results would be truncated.
struct CapExceeded : Error {
    using Error::Error;
};

struct SearchFailure : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

} // namespace mgc

#endif
