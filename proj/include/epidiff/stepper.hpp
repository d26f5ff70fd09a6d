#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "epidiff/coefficients.hpp"
#include "epidiff/diagnostics.hpp"
#include "epidiff/grid.hpp"
#include "epidiff/linear_solver.hpp"
#include "epidiff/model.hpp"
#include "epidiff/operators.hpp"

namespace epidiff {

/// Additive forcing s_k(x, y, t) added in the explicit stage (manufactured solutions).
using SourceTerm = std::function<double(int species, double x, double y, double t)>;

/// Accepted steps may carry solver round-off below zero up to this magnitude.
inline constexpr double kNegativityTolerance = 1e-12;

struct SimulationConfig {
    Grid grid;
    Parameters params;
    std::array<CoefficientSampler, 4> diffusion;
    CoefficientSampler influx;
    State initial;
    double t_end = 1.0;
    double dt_max = 0.01;
    double solver_tol = 1e-10;
    double positivity_safety = 0.9;
    std::size_t max_halvings = 20;
    /// Test hook: false disables both the positivity step limit and rejection
    /// of negative outputs, turning the scheme into plain forward Euler reaction.
    bool positivity_limiter = true;
    SolverMethod solver_method = SolverMethod::automatic;
    SourceTerm source;

    /// Throws ConfigError/DomainError on any violated invariant.
    void validate() const;
};

struct StepReport {
    double t_new = 0.0;
    double dt_used = 0.0;
    std::array<std::size_t, 4> linear_iterations{};
    std::array<double, 4> min_values{};
    std::size_t halvings = 0;
};

/// min(dt_max, safety / D_max) with D_max the largest destruction rate over
/// species and cells (plus the upwind convection rate for B).
double positivity_dt(const State& z, const Parameters& p, const Field& influx, double dt_max,
                     double safety, double convection_rate = 0.0);

/// Advances one configuration step by step, caching coefficient samples and
/// stencils of time-independent coefficients.
class Stepper {
public:
    explicit Stepper(const SimulationConfig& cfg);

    /// One accepted step from t, never beyond `t_stop`. Throws NumericalError on
    /// NaN or when 20 halvings do not produce an acceptable step.
    StepReport advance(State& z, double t, double t_stop);

private:
    const Field& influx_at(double t);
    const DiffusionStencil& stencil_at(std::size_t species, double t);
    bool try_step(const State& z, double t, double dt, State& out, StepReport& report);

    const SimulationConfig& cfg_;
    double convection_rate_ = 0.0;
    bool has_velocity_ = false;
    std::optional<Field> influx_cache_;
    Field influx_scratch_;
    std::array<std::optional<DiffusionStencil>, 4> stencil_cache_;
    std::array<DiffusionStencil, 4> stencil_scratch_;
};

/// Single step from (z, t) to at most min(t + dt_max, t_end).
std::pair<State, StepReport> step(const State& z, double t, const SimulationConfig& cfg);

struct Observation {
    std::size_t step = 0;
    double t = 0.0;
    const State* state = nullptr;
    const DiagnosticsRecord* diagnostics = nullptr;
};

using Observer = std::function<void(const Observation&)>;

struct RunOptions {
    /// Diagnostics are recorded and observers invoked every `cadence` steps,
    /// at the initial state and at the final step.
    std::size_t cadence = 1;
    std::vector<Observer> observers;
    /// Attractor target for J; without it the J columns are NaN.
    std::optional<State> target;
    /// Declared influx bound, used by the decay envelope.
    double influx_bound = 0.0;
};

struct RunResult {
    State final_state;
    double t_final = 0.0;
    DiagnosticsRecord initial;
    /// Records after accepted steps (the initial record is kept separately).
    std::vector<DiagnosticsRecord> series;
    std::vector<StepReport> steps;
    bool aborted = false;
    std::string abort_reason;
    std::size_t observer_errors = 0;
    /// Smallest value of any species over the initial state and every accepted step.
    double global_min = 0.0;

    /// Latest record, the initial one when no step was taken.
    const DiagnosticsRecord& last() const;
    /// Initial record followed by the series.
    std::vector<DiagnosticsRecord> records() const;
};

RunResult run(const SimulationConfig& cfg, const RunOptions& options = {});

}  // namespace epidiff
