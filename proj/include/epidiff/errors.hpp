#pragma once

#include <stdexcept>
#include <string>

namespace epidiff {

/// Input outside the mathematical domain of an operation (negative density, K <= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid or inconsistent configuration. Messages carry the key path when known.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Solver non-convergence, NaN, or exhausted step rejections.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fields or operators defined on different grids, or wrong vector lengths.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace epidiff
