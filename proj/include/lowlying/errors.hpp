#pragma once

#include <stdexcept>
#include <string>

namespace lowlying {

// A parameter violated one of the named inequalities the estimates depend on
// (e.g. "delta < 2/(8k+3)").  The message always spells out the inequality and
// the offending values; the CLI maps this to exit code 2.
class constraint_error : public std::domain_error {
public:
    constraint_error(std::string inequality, const std::string& detail)
        : std::domain_error(inequality + " violated: " + detail),
          inequality_(std::move(inequality)) {}

    const std::string& inequality() const noexcept { return inequality_; }

private:
    std::string inequality_;
};

// Internal numeric failure (non-convergence, evaluation at a singularity,
// boundary zero that survived perturbation, ...).  CLI exit code 1.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Requested table or summation range exceeds what the sieve backend supports.
class capacity_error : public constraint_error {
public:
    capacity_error(const std::string& detail)
        : constraint_error("1 <= limit <= 1e8", detail) {}
};

} // namespace lowlying
