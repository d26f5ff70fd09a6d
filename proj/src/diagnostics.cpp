#include "epidiff/diagnostics.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "epidiff/errors.hpp"
#include "epidiff/format.hpp"
#include "epidiff/operators.hpp"

namespace epidiff {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double half_l2sq_difference(const Field& a, const Field& b)
{
    require_same_grid(a, b, "attractor_distance");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double e = a[k] - b[k];
        s += e * e;
    }
    return 0.5 * s * a.grid().cell_volume();
}

}  // namespace

double energy_Y(const State& z, EnergyVariant variant)
{
    const double sir = field_reduce(z[0], Reduction::l2sq) + field_reduce(z[1], Reduction::l2sq) +
                       field_reduce(z[2], Reduction::l2sq);
    if (variant == EnergyVariant::proof) {
        return 0.5 * sir;
    }
    return sir + field_reduce(z[3], Reduction::l2sq);
}

double decay_envelope(double t, double y0, const Parameters& p, double volume, double b0)
{
    const double margin = p.d - g_zero(p);
    if (!(margin > 0.0)) {
        throw DomainError("decay_envelope: requires d - g0 > 0");
    }
    return std::exp(-margin * t / 2.0) * (y0 - 1.0) + 2.0 * b0 * volume / margin;
}

AttractorDistance attractor_distance(const State& z, const State& target)
{
    AttractorDistance out;
    for (std::size_t s = 0; s < 4; ++s) {
        out.components[s] = half_l2sq_difference(z[s], target[s]);
    }
    out.J = out.components[0] + out.components[1] + out.components[2];
    return out;
}

DiagnosticsRecord compute_diagnostics(const State& z, double t, const State* target,
                                      const EnvelopeContext* envelope)
{
    DiagnosticsRecord rec;
    rec.t = t;
    for (std::size_t s = 0; s < 4; ++s) {
        rec.masses[s] = field_reduce(z[s], Reduction::l1);
        rec.min_values[s] = field_reduce(z[s], Reduction::min);
    }
    rec.Y3 = energy_Y(z, EnergyVariant::proof);
    rec.Y4 = energy_Y(z, EnergyVariant::statement);
    if (target != nullptr) {
        const auto dist = attractor_distance(z, *target);
        rec.J_components = dist.components;
        rec.J = dist.J;
    } else {
        rec.J_components = {kNaN, kNaN, kNaN, kNaN};
        rec.J = kNaN;
    }
    rec.envelope = envelope != nullptr ? decay_envelope(t, envelope->y0, envelope->params,
                                                        envelope->volume, envelope->b0)
                                       : kNaN;
    return rec;
}

void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& records)
{
    os << kDiagnosticsHeader << '\n';
    for (const auto& r : records) {
        os << format_double(r.t);
        for (double m : r.masses) {
            os << ',' << format_double(m);
        }
        os << ',' << format_double(r.Y3) << ',' << format_double(r.Y4);
        for (double j : r.J_components) {
            os << ',' << format_double(j);
        }
        os << ',' << format_double(r.J) << ',' << format_double(r.envelope);
        for (double m : r.min_values) {
            os << ',' << format_double(m);
        }
        os << '\n';
    }
}

std::vector<DiagnosticsRecord> read_diagnostics_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line != kDiagnosticsHeader) {
        throw ConfigError("diagnostics csv: unexpected header");
    }
    std::vector<DiagnosticsRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<double> v;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            v.push_back(cell == "nan" ? kNaN : parse_double(cell, "diagnostics csv"));
        }
        if (v.size() != 17) {
            throw ConfigError("diagnostics csv: expected 17 columns");
        }
        DiagnosticsRecord r;
        r.t = v[0];
        for (std::size_t s = 0; s < 4; ++s) {
            r.masses[s] = v[1 + s];
            r.J_components[s] = v[7 + s];
            r.min_values[s] = v[13 + s];
        }
        r.Y3 = v[5];
        r.Y4 = v[6];
        r.J = v[11];
        r.envelope = v[12];
        out.push_back(r);
    }
    return out;
}

}  // namespace epidiff
