#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epidiff/stepper.hpp"

namespace epidiff {

struct SweepAxis {
    std::string name;  // any scalar Parameters field
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 2;
};

/// Cartesian product of parameter axes; a point reaches the attractor iff
/// J(t_end) / J(0) < threshold.
struct SweepSpec {
    std::vector<SweepAxis> axes;
    double t_end = 80.0;
    double threshold = 1e-4;
};

struct VerifySettings {
    std::size_t seeds = 20;
    double nonnegativity_t_end = 10.0;
};

/// A validated configuration plus its effective key/value echo.
struct Scenario {
    SimulationConfig sim;
    std::optional<SweepSpec> sweep;
    VerifySettings verify;
    /// Keyed "section.key" with every default filled in.
    std::map<std::string, std::string> effective;
};

/// Reads the flat key/value format ([grid], [params], [coefficients],
/// [initial], [run], optional [sweep]). `seed` drives the optional
/// multiplicative noise on initial data. Throws ConfigError naming the key.
Scenario parse_config(std::string_view text, std::uint64_t seed = 0);
Scenario load_config(const std::string& path, std::uint64_t seed = 0);

/// The effective configuration in the same format; parse(dump(x)) reproduces x.
std::string dump_config(const Scenario& scenario);

/// Sets a scalar Parameters field by name ("d", "gamma", "beta1", ...).
void set_parameter(Parameters& p, const std::string& name, double value);
double get_parameter(const Parameters& p, const std::string& name);

}  // namespace epidiff
