#pragma once

#include <functional>
#include <optional>
#include <string>

#include "epidiff/expression.hpp"
#include "epidiff/grid.hpp"

namespace epidiff {

enum class CoefficientKind { constant, space_varying, space_time_varying };

/// A bounded space-time function such as d_i(x, t) or the influx b(x, t).
///
/// Every call to sample() checks lower <= value <= upper, so a sampler that
/// leaves its declared band is reported at the first offending sample rather
/// than silently feeding the solver.
class CoefficientSampler {
public:
    using Function = std::function<double(double x, double y, double t)>;

    CoefficientSampler() = default;

    static CoefficientSampler constant(double value);
    /// Bounds are [lower, upper]; the expression's dependence on x, y, t sets the kind.
    static CoefficientSampler expression(const Expression& e, double lower, double upper);
    static CoefficientSampler function(Function fn, CoefficientKind kind, double lower,
                                       double upper, std::string description = "function");

    /// Attach the t -> infinity profile. Time-independent samplers are their own limit.
    CoefficientSampler& with_limit(Function limit, std::string description = "function");
    CoefficientSampler& with_limit(const Expression& limit);

    CoefficientKind kind() const { return kind_; }
    bool time_dependent() const { return kind_ == CoefficientKind::space_time_varying; }
    double lower() const { return lower_; }
    double upper() const { return upper_; }
    /// Declared band check; diffusion coefficients additionally need lower > 0.
    void require_positive_lower_bound(const std::string& key) const;
    void require_nonnegative_lower_bound(const std::string& key) const;

    double evaluate(double x, double y, double t) const;
    /// Throws DomainError when a sample leaves [lower, upper].
    Field sample(const Grid& grid, double t) const;

    bool has_limit() const { return !time_dependent() || static_cast<bool>(limit_); }
    Field limit(const Grid& grid) const;

    /// "constant v" or "expression <text>", as accepted by the config reader.
    const std::string& description() const { return description_; }
    const std::string& limit_description() const { return limit_description_; }

private:
    Function fn_;
    Function limit_;
    CoefficientKind kind_ = CoefficientKind::constant;
    double lower_ = 0.0;
    double upper_ = 0.0;
    std::string description_;
    std::string limit_description_;
};

}  // namespace epidiff
