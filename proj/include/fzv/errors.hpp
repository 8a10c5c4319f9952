#ifndef FZV_ERRORS_HPP
#define FZV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fzv {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A division that was expected to be exact produced a nonzero remainder.
// In most callers this signals a violated algebraic identity, not bad input.
struct NonExactDivision : Error {
    explicit NonExactDivision(const std::string& msg) : Error("non-exact division: " + msg) {}
};

// gcd(a, P) != 1 when an inverse mod P was requested.
struct NotAUnit : Error {
    explicit NotAUnit(const std::string& msg) : Error("not a unit: " + msg) {}
};

struct ArityMismatch : Error {
    explicit ArityMismatch(const std::string& msg) : Error("arity mismatch: " + msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error("domain error: " + msg) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& msg) : Error("index out of range: " + msg) {}
};

struct PrecisionExceeded : Error {
    explicit PrecisionExceeded(const std::string& msg) : Error("precision exceeded: " + msg) {}
};

struct NotStabilized : Error {
    explicit NotStabilized(const std::string& msg) : Error("limit did not stabilize: " + msg) {}
};

// The two independent constructions of an H polynomial disagree.
struct RouteMismatch : Error {
    explicit RouteMismatch(const std::string& msg) : Error("route mismatch: " + msg) {}
};

// Interpolation produced coefficients outside A = F_q[theta].
struct NonIntegralResult : Error {
    explicit NonIntegralResult(const std::string& msg) : Error("non-integral result: " + msg) {}
};

struct PreconditionUnmet : Error {
    explicit PreconditionUnmet(const std::string& msg) : Error("precondition unmet: " + msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& msg) : Error("budget exceeded: " + msg) {}
};

struct CacheMismatch : Error {
    explicit CacheMismatch(const std::string& msg) : Error("cache mismatch: " + msg) {}
};

} // namespace fzv

#endif
