#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "epidiff/grid.hpp"
#include "epidiff/model.hpp"

namespace epidiff {

/// Y(t) comes in two forms: the statement variant integrates S^2+I^2+R^2+B^2,
/// the proof variant is (1/2) * integral of S^2+I^2+R^2.
enum class EnergyVariant { statement, proof };

double energy_Y(const State& z, EnergyVariant variant);

/// e^{-(d-g0) t / 2} (Y0 - 1) + 2 b0 |Omega| / (d - g0).
/// Throws DomainError unless d - g0 > 0.
double decay_envelope(double t, double y0, const Parameters& p, double volume, double b0);

struct AttractorDistance {
    std::array<double, 4> components{};  // J1..J4
    double J = 0.0;                      // J1 + J2 + J3
};

/// J1 = 1/2 int (S - S_inf)^2, J2..J4 = 1/2 int I^2, R^2, B^2 measured
/// against the target (S_inf, 0, 0, 0) (any target state is accepted).
AttractorDistance attractor_distance(const State& z, const State& target);

struct DiagnosticsRecord {
    double t = 0.0;
    std::array<double, 4> masses{};
    double Y3 = 0.0;  // proof variant
    double Y4 = 0.0;  // statement variant
    std::array<double, 4> J_components{};
    double J = 0.0;
    double envelope = 0.0;
    std::array<double, 4> min_values{};
};

/// Inputs of the decay envelope; absent when d - g0 <= 0.
struct EnvelopeContext {
    double y0 = 0.0;
    Parameters params;
    double volume = 0.0;
    double b0 = 0.0;
};

/// J fields are NaN without a target, the envelope NaN without a context.
DiagnosticsRecord compute_diagnostics(const State& z, double t, const State* target,
                                      const EnvelopeContext* envelope);

inline constexpr std::string_view kDiagnosticsHeader =
    "t,mass_S,mass_I,mass_R,mass_B,Y3,Y4,J1,J2,J3,J4,J,envelope,min_S,min_I,min_R,min_B";

void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& records);
std::vector<DiagnosticsRecord> read_diagnostics_csv(std::istream& is);

}  // namespace epidiff
