#pragma once

#include <stdexcept>
#include <string>

namespace gtrans {

/// Input outside the mathematical domain of an operation (e.g. an invalid
/// Jacobi exponent, a translation angle at +-pi).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller broke a precondition that is not a domain issue (mismatched bases,
/// zero-norm input to a ratio, ...).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A numerical procedure failed: eigen-solver breakdown, non-finite samples,
/// refinement that does not settle.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gtrans
