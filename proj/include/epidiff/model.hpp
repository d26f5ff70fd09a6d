#pragma once

#include <array>
#include <vector>

namespace epidiff {

/// Bacteria growth law. Logistic g*B*(1 - B/K) is the model; the saturating
/// form g*B*(1 - B/(B+K)) is kept behind an explicit switch.
enum class GrowthLaw { logistic, saturating };

/// Scalar model rates of the SIRS-B system.
struct Parameters {
    double d = 1.0;       // natural death rate
    double gamma = 1.0;   // recovery
    double sigma = 1.0;   // immunity loss
    double delta = 1.0;   // bacterial death
    double xi = 1.0;      // shedding by infected hosts
    double g = 0.0;       // bacterial intrinsic growth
    double K = 1.0;       // bacterial capacity, also half-saturation of the incidence
    double beta1 = 1.0;   // host-host transmission
    double beta2 = 1.0;   // environment-host transmission
    std::vector<double> velocity;  // bacteria convection b_k, empty or one entry per axis
    GrowthLaw growth = GrowthLaw::logistic;

    /// Throws DomainError naming the offending field.
    void validate() const;
};

/// Right-hand sides f1..f4 at one point.
struct ReactionVector {
    double f1 = 0.0;
    double f2 = 0.0;
    double f3 = 0.0;
    double f4 = 0.0;
};

/// Per-species split f_i = P_i - D_i * u_i with P_i, D_i >= 0 on nonnegative states.
struct ProductionDestruction {
    std::array<double, 4> production{};
    std::array<double, 4> destruction{};
};

/// h(B) = B / (B + K).
double incidence(double B, double K);

ReactionVector reaction(double S, double I, double R, double B, double influx, const Parameters& p);

ProductionDestruction split_reaction(double S, double I, double R, double B, double influx,
                                     const Parameters& p);

/// Largest pointwise destruction rate over the four species at this state.
double max_destruction_rate(double S, double I, double R, double B, const Parameters& p);

/// g0 = (sigma + beta1 + beta2 + gamma) / 4.
double g_zero(const Parameters& p);

struct AttractorCondition {
    bool holds = false;
    double margin = 0.0;  // d - g0
};

AttractorCondition attractor_condition(const Parameters& p);

}  // namespace epidiff
