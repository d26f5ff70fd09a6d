#include "epidiff/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epidiff/errors.hpp"

namespace epidiff {

namespace {

void require_positive(double v, const char* name)
{
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string("params.") + name + " must be positive and finite, got " +
                          std::to_string(v));
    }
}

void require_nonnegative_state(double S, double I, double R, double B)
{
    if (!(S >= 0.0 && I >= 0.0 && R >= 0.0 && B >= 0.0)) {
        throw DomainError("reaction: state components must be nonnegative");
    }
}

}  // namespace

void Parameters::validate() const
{
    require_positive(d, "d");
    require_positive(gamma, "gamma");
    require_positive(sigma, "sigma");
    require_positive(delta, "delta");
    require_positive(xi, "xi");
    require_positive(K, "K");
    require_positive(beta1, "beta1");
    require_positive(beta2, "beta2");
    if (!(g >= 0.0) || !std::isfinite(g)) {
        throw DomainError("params.g must be nonnegative and finite");
    }
    for (double v : velocity) {
        if (!std::isfinite(v)) {
            throw DomainError("params.velocity components must be finite");
        }
    }
}

double incidence(double B, double K)
{
    if (!(K > 0.0)) {
        throw DomainError("incidence: K must be positive");
    }
    if (!(B >= 0.0)) {
        throw DomainError("incidence: B must be nonnegative");
    }
    return B / (B + K);
}

ReactionVector reaction(double S, double I, double R, double B, double influx, const Parameters& p)
{
    require_nonnegative_state(S, I, R, B);
    if (!(influx >= 0.0)) {
        throw DomainError("reaction: influx must be nonnegative");
    }
    const double h = incidence(B, p.K);
    const double infection = p.beta1 * S * I + p.beta2 * S * h;
    const double growth = p.growth == GrowthLaw::logistic ? p.g * B * (1.0 - B / p.K)
                                                          : p.g * B * (1.0 - B / (B + p.K));
    ReactionVector f;
    f.f1 = influx - infection - p.d * S + p.sigma * R;
    f.f2 = infection - (p.d + p.gamma) * I;
    f.f3 = p.gamma * I - (p.d + p.sigma) * R;
    f.f4 = p.xi * I + growth - p.delta * B;
    return f;
}

ProductionDestruction split_reaction(double S, double I, double R, double B, double influx,
                                     const Parameters& p)
{
    require_nonnegative_state(S, I, R, B);
    const double h = incidence(B, p.K);
    ProductionDestruction pd;
    pd.production = {influx + p.sigma * R, p.beta1 * S * I + p.beta2 * S * h, p.gamma * I,
                     p.xi * I};
    pd.destruction = {p.beta1 * I + p.beta2 * h + p.d, p.d + p.gamma, p.d + p.sigma, p.delta};
    if (p.growth == GrowthLaw::logistic) {
        // g*B*(1 - B/K): production g*B, destruction (g/K)*B per unit B
        pd.production[3] += p.g * B;
        pd.destruction[3] += p.g * B / p.K;
    } else {
        pd.production[3] += p.g * B * p.K / (B + p.K);
    }
    return pd;
}

double max_destruction_rate(double S, double I, double R, double B, const Parameters& p)
{
    const auto pd = split_reaction(S, I, R, B, 0.0, p);
    return *std::max_element(pd.destruction.begin(), pd.destruction.end());
}

double g_zero(const Parameters& p)
{
    p.validate();
    return (p.sigma + p.beta1 + p.beta2 + p.gamma) / 4.0;
}

AttractorCondition attractor_condition(const Parameters& p)
{
    const double margin = p.d - g_zero(p);
    return {margin > 0.0, margin};
}

}  // namespace epidiff
