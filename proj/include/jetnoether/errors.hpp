#pragma once

#include <stdexcept>
#include <string>

namespace jetnoether {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact integer arithmetic left the 64-bit range.
struct OverflowError : Error {
    using Error::Error;
};

/// Division by something other than a rational constant or a parameter monomial.
struct UnsupportedDenominator : Error {
    using Error::Error;
};

/// Substitution rule keyed on a derivative atom instead of a base variable.
struct NonBaseSubstitution : Error {
    using Error::Error;
};

/// Flux reconstruction was asked for an expression that is not a total divergence.
struct NotADivergence : Error {
    using Error::Error;
};

/// The homotopy / integration step has no closed form in the expression class.
struct HomotopyDegenerate : Error {
    using Error::Error;
};

/// Reduction modulo the system exceeded the substitution depth bound.
struct NonTerminating : Error {
    using Error::Error;
};

/// No K matrices exist within the configured derivative order and ansatz degree.
/// Either the generator is not a symmetry in the strong sense or the bounds
/// are too small; raising --max-k-order / --ansatz-degree distinguishes the two.
struct AnsatzExhausted : Error {
    using Error::Error;
};

/// A balance function mentioned a dummy field.
struct DummyInBalance : Error {
    using Error::Error;
};

/// The balance variational problem is not invariant under the given generator.
struct BalanceNotInvariant : Error {
    using Error::Error;
};

/// The generator fails the linearized symmetry condition for the system.
struct NotASymmetry : Error {
    using Error::Error;
};

/// Parse error with source location.
struct SyntaxError : Error {
    int line;
    int column;
    SyntaxError(const std::string& msg, int line_, int column_)
        : Error("syntax error at " + std::to_string(line_) + ":" + std::to_string(column_) + ": " + msg),
          line(line_), column(column_) {}
};

/// Declaration / name-resolution error with source location.
struct SemanticError : Error {
    int line;
    int column;
    SemanticError(const std::string& msg, int line_ = 0, int column_ = 0)
        : Error("error at " + std::to_string(line_) + ":" + std::to_string(column_) + ": " + msg),
          line(line_), column(column_) {}
};

} // namespace jetnoether
