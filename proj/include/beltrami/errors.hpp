#pragma once

#include <stdexcept>
#include <string>

namespace bcert {

// Base class for every failure of a validated computation.  Code that
// certifies bounds must never silently widen or clamp: when an operation
// cannot produce a sound enclosure it throws one of these.
class rigor_error : public std::runtime_error {
public:
    rigor_error(const std::string& op, const std::string& what)
        : std::runtime_error(op + ": " + what), op_(op) {}
    const std::string& op() const noexcept { return op_; }

private:
    std::string op_;
};

// Input outside the mathematical domain of the operation
// (division by a set containing zero, log of a set touching zero, ...).
class domain_error : public rigor_error {
public:
    using rigor_error::rigor_error;
};

// A set argument straddles a branch cut, so no single-valued
// holomorphic extension exists over the whole argument.
class branch_error : public rigor_error {
public:
    using rigor_error::rigor_error;
};

// Enclosure grew past a representable or configured range.
class overflow_error : public rigor_error {
public:
    using rigor_error::rigor_error;
};

// A verification step (contraction check, containment check,
// positivity of a denominator, ...) did not succeed.  Carries the
// pipeline stage name for reporting.
class verify_error : public rigor_error {
public:
    using rigor_error::rigor_error;
};

// No available evaluation strategy reaches the requested accuracy:
// every sound route either overflows or returns a bound too wide to use.
class precision_error : public rigor_error {
public:
    using rigor_error::rigor_error;
};

} // namespace bcert
