#include "epidiff/coefficients.hpp"

#include <cmath>
#include <sstream>

#include "epidiff/errors.hpp"

namespace epidiff {

namespace {

std::string format_number(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

CoefficientSampler CoefficientSampler::constant(double value)
{
    if (!std::isfinite(value)) {
        throw DomainError("coefficient: constant must be finite");
    }
    CoefficientSampler c;
    c.fn_ = [value](double, double, double) { return value; };
    c.kind_ = CoefficientKind::constant;
    c.lower_ = value;
    c.upper_ = value;
    c.description_ = "constant " + format_number(value);
    return c;
}

CoefficientSampler CoefficientSampler::expression(const Expression& e, double lower, double upper)
{
    CoefficientKind kind = CoefficientKind::constant;
    if (e.depends_on_time()) {
        kind = CoefficientKind::space_time_varying;
    } else if (e.depends_on_space()) {
        kind = CoefficientKind::space_varying;
    }
    auto c = function([e](double x, double y, double t) { return e.evaluate(x, y, t); }, kind,
                      lower, upper, "expression " + e.source());
    return c;
}

CoefficientSampler CoefficientSampler::function(Function fn, CoefficientKind kind, double lower,
                                                double upper, std::string description)
{
    if (!(lower <= upper)) {
        throw DomainError("coefficient: lower bound exceeds upper bound");
    }
    CoefficientSampler c;
    c.fn_ = std::move(fn);
    c.kind_ = kind;
    c.lower_ = lower;
    c.upper_ = upper;
    c.description_ = std::move(description);
    return c;
}

CoefficientSampler& CoefficientSampler::with_limit(Function limit, std::string description)
{
    limit_ = std::move(limit);
    limit_description_ = std::move(description);
    return *this;
}

CoefficientSampler& CoefficientSampler::with_limit(const Expression& limit)
{
    if (limit.depends_on_time()) {
        throw ConfigError("coefficient limit '" + limit.source() + "' must not depend on t");
    }
    return with_limit([limit](double x, double y, double) { return limit.evaluate(x, y, 0.0); },
                      "expression " + limit.source());
}

void CoefficientSampler::require_positive_lower_bound(const std::string& key) const
{
    if (!(lower_ > 0.0)) {
        throw ConfigError(key + ": lower bound d0 must be positive");
    }
}

void CoefficientSampler::require_nonnegative_lower_bound(const std::string& key) const
{
    if (!(lower_ >= 0.0)) {
        throw ConfigError(key + ": values must be nonnegative");
    }
}

double CoefficientSampler::evaluate(double x, double y, double t) const
{
    return fn_(x, y, t);
}

Field CoefficientSampler::sample(const Grid& grid, double t) const
{
    Field f(grid);
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        const double y = grid.y_center(j);
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            const double v = fn_(grid.x_center(i), y, t);
            if (!(v >= lower_ && v <= upper_)) {
                throw DomainError("coefficient '" + description_ + "' sampled " + format_number(v) +
                                  " outside [" + format_number(lower_) + ", " +
                                  format_number(upper_) + "] at t=" + format_number(t));
            }
            f[grid.index(i, j)] = v;
        }
    }
    return f;
}

Field CoefficientSampler::limit(const Grid& grid) const
{
    if (!time_dependent()) {
        return sample(grid, 0.0);
    }
    if (!limit_) {
        throw ConfigError("coefficient '" + description_ + "' has no configured limit profile");
    }
    return Field::from_function(grid, [this](double x, double y) { return limit_(x, y, 0.0); });
}

}  // namespace epidiff
