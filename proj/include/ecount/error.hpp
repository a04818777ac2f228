#pragma once

#include <stdexcept>
#include <string>

namespace ecount {

/// A precondition on an argument was violated (negative n, i out of range, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A certified computation could not be decided below the precision cap.
/// Raised instead of ever returning a guess.
class UndecidableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two routes that must agree did not, or a bound chain was broken.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A brute-force oracle refused an input above its hard size cap.
class OracleRefused : public DomainError {
public:
    using DomainError::DomainError;
};

inline void require_domain(bool ok, const std::string& what)
{
    if (!ok)
        throw DomainError(what);
}

} // namespace ecount
