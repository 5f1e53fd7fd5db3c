#ifndef INJ_ERRORS_HPP
#define INJ_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace inj {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 0 lies inside the divisor interval.
struct DivisionByZeroInterval : Error {
    DivisionByZeroInterval() : Error("interval division by an interval containing zero") {}
};

// Point evaluation outside the function domain (division by zero, sqrt of
// a negative number, ...).
struct DomainError : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::size_t offset;     // 0-based byte offset into the source text
    std::string expected;   // human-readable expected-token set
    ParseError(std::size_t off, std::string exp)
        : Error("parse error at byte " + std::to_string(off) + ": expected " + exp),
          offset(off), expected(std::move(exp)) {}
};

struct UnknownVariable : Error {
    std::size_t offset;
    std::string name;
    UnknownVariable(std::size_t off, std::string n)
        : Error("unknown variable '" + n + "' at byte " + std::to_string(off)),
          offset(off), name(std::move(n)) {}
};

struct NonIntegerExponent : Error {
    std::size_t offset;
    explicit NonIntegerExponent(std::size_t off)
        : Error("exponent at byte " + std::to_string(off) +
                " must be a non-negative integer literal"),
          offset(off) {}
};

struct SingularA : Error {
    SingularA() : Error("operator matrix A is numerically singular (|det A| <= 1e-12)") {}
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct DegenerateWitness : Error {
    DegenerateWitness()
        : Error("witness pair is degenerate: |re w1 im w2 - re w2 im w1| <= delta_min") {}
};

struct NotHolomorphic : Error {
    explicit NotHolomorphic(double residual)
        : Error("Cauchy-Riemann residual " + std::to_string(residual) +
                " exceeds the holomorphy tolerance") {}
};

struct BudgetMisconfigured : Error {
    BudgetMisconfigured() : Error("subdivision budget must be positive") {}
};

struct NoValidWitness : Error {
    NoValidWitness() : Error("all witness candidates were degenerate") {}
};

// CLI configuration file failed validation.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace inj

#endif
