#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "epidiff/mms.hpp"
#include "epidiff/stepper.hpp"

namespace epidiff {

struct Criterion {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    std::string relation;  // "<=", ">=", "in"
    bool pass = false;
    /// Upper end for relation "in" ([threshold, upper]).
    double upper = 0.0;
};

Criterion at_most(std::string name, double measured, double threshold);
Criterion at_least(std::string name, double measured, double threshold);
Criterion within(std::string name, double measured, double lo, double hi);

struct VerificationVerdict {
    std::string suite;
    bool applicable = true;
    bool pass = true;
    std::vector<Criterion> criteria;
    std::map<std::string, std::string> metadata;

    void add(Criterion c);
    /// Marks the suite inapplicable; such a suite neither passes nor fails.
    void skip(const std::string& reason);
};

/// One line per criterion: "<suite> <name> measured=<v> threshold=<rel v> PASS|FAIL",
/// plus "<suite> inapplicable: <reason>" and "<suite> meta <key>=<value>" lines.
std::string format_verdict(const VerificationVerdict& v);

/// True iff every applicable suite passed.
bool all_pass(const std::vector<VerificationVerdict>& verdicts);

/// Base configuration with all nine rates drawn uniformly from [0.1, 2] and
/// cellwise initial data uniform in [0, 2], from an mt19937_64 seeded by `seed`.
SimulationConfig randomized_config(const SimulationConfig& base, std::uint64_t seed, double t_end);

struct RandomizedStudy {
    std::vector<SimulationConfig> configs;
    std::vector<RunResult> results;
};

/// Seeds are seed, seed + 1, ..., run in parallel on `threads` workers.
RandomizedStudy randomized_runs(const SimulationConfig& base, std::size_t seeds,
                                std::uint64_t seed, double t_end, std::size_t threads);

/// Global minimum over every run, species, cell and step >= -kNegativityTolerance.
VerificationVerdict verify_nonnegativity(const RandomizedStudy& study);
VerificationVerdict verify_nonnegativity(const SimulationConfig& base, std::size_t seeds,
                                         std::uint64_t seed = 0, double t_end = 10.0,
                                         std::size_t threads = 1);

/// Mass bound constant for S + I + R: max(M0, b0 |Omega| / d).
double host_mass_bound(const SimulationConfig& cfg);

/// Bound on the B mass from d/dt m + delta m <= xi C + growth, with the
/// host bound C and, for logistic growth, Jensen's inequality
/// int B^2 >= m^2 / |Omega|. Returns +inf when the B equation carries convection.
double bacteria_mass_bound(const SimulationConfig& cfg);

/// Both mass criteria for one finished run.
std::vector<Criterion> mass_bound_criteria(const SimulationConfig& cfg, const RunResult& result,
                                           const std::string& prefix = "");
VerificationVerdict verify_mass_bound(const RandomizedStudy& study);
VerificationVerdict verify_mass_bound(const SimulationConfig& cfg);

/// Host mass M(t) = (M0 - b0|Omega|/d) e^{-dt} + b0|Omega|/d under constant influx.
double closed_form_host_mass(double m0, double b0, double volume, double d, double t);

struct MassBalanceStudy {
    std::vector<double> dts;
    /// max_t |M_h(t) - M(t)| / M(t)
    std::vector<double> errors;
    double order = 0.0;
};

/// Uniform initial data and constant influx on a small 2D grid.
MassBalanceStudy mass_balance_study(const std::vector<double>& dts, double t_end = 2.0);
VerificationVerdict verify_mass_balance(const std::vector<double>& dts = {4e-3, 2e-3, 1e-3});

struct AttractorRun {
    RunResult result;
    double margin = 0.0;
    double ratio = 0.0;
    double fitted_rate = 0.0;
};

/// Least-squares slope of log J against t over records with t >= t_from and J > 0, negated.
double fitted_decay_rate(const std::vector<DiagnosticsRecord>& series, double t_from);

/// Inapplicable when d - g0 <= 0 or a time-dependent coefficient has no limit.
VerificationVerdict verify_attractor(const SimulationConfig& cfg, AttractorRun* details = nullptr);

struct ConvergenceSettings {
    std::vector<std::size_t> spatial_cells{16, 32, 64};
    std::vector<double> temporal_dts{0.04, 0.02, 0.01};
    std::size_t temporal_cells = 128;
    double temporal_t_end = 1.0;
    std::vector<std::size_t> diffusion_cells{16, 32, 64};
    std::vector<std::size_t> steady_cells{32, 64, 128};
};

VerificationVerdict verify_convergence_orders(const ConvergenceSettings& settings = {});

/// Nonnegativity, mass bound (on the same runs), attractor (if applicable)
/// mass balance and convergence orders for one scenario config.
std::vector<VerificationVerdict> verify_all(const SimulationConfig& cfg, std::size_t seeds,
                                            std::uint64_t seed, double nonnegativity_t_end,
                                            std::size_t threads);

}  // namespace epidiff
