#pragma once

#include <stdexcept>
#include <string>

namespace jforge {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two values live on different charts.
struct ChartMismatchError : Error {
    using Error::Error;
};

// An operation's stated precondition does not hold (e.g. structure not
// affine, axioms unverified, cocycle violated).  Carries a short witness
// description when one is available.
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg, std::string witness = {})
        : Error(msg), witness_(std::move(witness)) {}
    const std::string& witness() const { return witness_; }

  private:
    std::string witness_;
};

// Evaluation of a Laurent term at a zero coordinate.
struct PoleError : Error {
    using Error::Error;
};

// Structure file does not parse against the schema.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace jforge
