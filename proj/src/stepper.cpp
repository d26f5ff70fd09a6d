#include "epidiff/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "epidiff/errors.hpp"
#include "epidiff/format.hpp"
#include "epidiff/kernels.hpp"

namespace epidiff {

namespace {

kernels::ReactionRates rates_of(const Parameters& p, double extra_b_destruction)
{
    kernels::ReactionRates r;
    r.d = p.d;
    r.gamma = p.gamma;
    r.sigma = p.sigma;
    r.delta = p.delta;
    r.xi = p.xi;
    r.g = p.g;
    r.K = p.K;
    r.beta1 = p.beta1;
    r.beta2 = p.beta2;
    r.logistic = p.growth == GrowthLaw::logistic;
    r.extra_b_destruction = extra_b_destruction;
    return r;
}

bool any_nonzero(const std::vector<double>& v)
{
    return std::any_of(v.begin(), v.end(), [](double x) { return x != 0.0; });
}

}  // namespace

void SimulationConfig::validate() const
{
    params.validate();
    if (!params.velocity.empty() && params.velocity.size() != static_cast<std::size_t>(grid.dim())) {
        throw ConfigError("params.velocity: need one component per axis");
    }
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
        throw ConfigError("run.t_end must be nonnegative");
    }
    if (!(dt_max > 0.0)) {
        throw ConfigError("run.dt_max must be positive");
    }
    if (!(solver_tol > 0.0)) {
        throw ConfigError("run.solver_tol must be positive");
    }
    if (!(positivity_safety > 0.0 && positivity_safety <= 1.0)) {
        throw ConfigError("run.positivity_safety must lie in (0, 1]");
    }
    for (std::size_t s = 0; s < 4; ++s) {
        diffusion[s].require_positive_lower_bound("coefficients.d" + std::to_string(s + 1));
    }
    influx.require_nonnegative_lower_bound("coefficients.b");
    for (std::size_t s = 0; s < 4; ++s) {
        const Field& f = initial[s];
        if (!(f.grid() == grid)) {
            throw ConfigError("initial." + std::string(kSpeciesNames[s]) + ": wrong grid");
        }
        for (std::size_t k = 0; k < f.size(); ++k) {
            if (!(f[k] >= 0.0) || !std::isfinite(f[k])) {
                throw ConfigError("initial." + std::string(kSpeciesNames[s]) +
                                  ": initial data must be finite and nonnegative");
            }
        }
    }
}

double positivity_dt(const State& z, const Parameters& p, const Field& influx, double dt_max,
                     double safety, double convection_rate)
{
    kernels::ReactionArgs args;
    args.n = z[0].size();
    args.s = z[0].data();
    args.i = z[1].data();
    args.r = z[2].data();
    args.b = z[3].data();
    args.influx = influx.data();
    args.rates = rates_of(p, convection_rate);
    const double d_max = kernels::active().max_destruction(args);
    const double dt = std::min(dt_max, safety / d_max);
    if (!(dt > 0.0)) {
        throw ConfigError("positivity_dt: computed step is not positive");
    }
    return dt;
}

Stepper::Stepper(const SimulationConfig& cfg) : cfg_(cfg)
{
    has_velocity_ = any_nonzero(cfg.params.velocity);
    if (has_velocity_) {
        convection_rate_ = convection_rate(cfg.grid, cfg.params.velocity);
    }
    if (!cfg.influx.time_dependent()) {
        influx_cache_ = cfg.influx.sample(cfg.grid, 0.0);
    }
    for (std::size_t s = 0; s < 4; ++s) {
        if (!cfg.diffusion[s].time_dependent()) {
            stencil_cache_[s] = DiffusionStencil(cfg.diffusion[s].sample(cfg.grid, 0.0));
        }
    }
}

const Field& Stepper::influx_at(double t)
{
    if (influx_cache_) {
        return *influx_cache_;
    }
    influx_scratch_ = cfg_.influx.sample(cfg_.grid, t);
    return influx_scratch_;
}

const DiffusionStencil& Stepper::stencil_at(std::size_t species, double t)
{
    if (stencil_cache_[species]) {
        return *stencil_cache_[species];
    }
    stencil_scratch_[species] = DiffusionStencil(cfg_.diffusion[species].sample(cfg_.grid, t));
    return stencil_scratch_[species];
}

bool Stepper::try_step(const State& z, double t, double dt, State& out, StepReport& report)
{
    const auto& k = kernels::active();
    const Grid& g = cfg_.grid;
    const std::size_t n = g.size();

    // explicit stage: reaction (+ convection of B, + optional source) at t
    State star = z;
    kernels::ReactionArgs args;
    args.n = n;
    args.s = z[0].data();
    args.i = z[1].data();
    args.r = z[2].data();
    args.b = z[3].data();
    args.influx = influx_at(t).data();
    args.out_s = star[0].data();
    args.out_i = star[1].data();
    args.out_r = star[2].data();
    args.out_b = star[3].data();
    args.dt = dt;
    args.rates = rates_of(cfg_.params, 0.0);
    k.reaction_update(args);

    if (has_velocity_) {
        const Field conv = convect(z[3], cfg_.params.velocity);
        k.axpy(dt, conv.data(), star[3].data(), n);
    }
    if (cfg_.source) {
        for (int s = 0; s < 4; ++s) {
            for (std::size_t j = 0; j < g.ny(); ++j) {
                const double y = g.y_center(j);
                for (std::size_t i = 0; i < g.nx(); ++i) {
                    star[s][g.index(i, j)] += dt * cfg_.source(s, g.x_center(i), y, t);
                }
            }
        }
    }

    // implicit stage: (I - dt L(t + dt)) u = u* per species
    SolveOptions opt;
    opt.tol = cfg_.solver_tol;
    opt.method = cfg_.solver_method;
    opt.reference = ResidualReference::initial_residual;
    out = star;
    for (std::size_t s = 0; s < 4; ++s) {
        const DiffusionStencil& st = stencil_at(s, t + dt);
        const SolveReport sr = solve_implicit(st, 1.0, -dt, star[s].values(), out[s].values(), opt);
        report.linear_iterations[s] = sr.iterations;
        if (!sr.converged) {
            return false;
        }
    }

    for (std::size_t s = 0; s < 4; ++s) {
        if (!out[s].all_finite()) {
            throw NumericalError("step: non-finite value in species " +
                                 std::string(kSpeciesNames[s]) + " at t=" + format_double(t));
        }
        report.min_values[s] = k.min(out[s].data(), n);
    }
    if (cfg_.positivity_limiter) {
        for (double m : report.min_values) {
            if (m < -kNegativityTolerance) {
                return false;
            }
        }
    }
    return true;
}

StepReport Stepper::advance(State& z, double t, double t_stop)
{
    const double remaining = t_stop - t;
    // absorb a sliver left over from accumulated rounding into this step
    const double cap = remaining <= cfg_.dt_max * (1.0 + 1e-9) ? remaining : cfg_.dt_max;
    if (!(cap > 0.0)) {
        throw ContractViolation("step: nothing left to integrate");
    }
    double dt = cap;
    if (cfg_.positivity_limiter) {
        dt = positivity_dt(z, cfg_.params, influx_at(t), cap, cfg_.positivity_safety,
                           convection_rate_);
    }
    StepReport report;
    State out;
    for (std::size_t attempt = 0; attempt <= cfg_.max_halvings; ++attempt) {
        report.halvings = attempt;
        if (try_step(z, t, dt, out, report)) {
            // land exactly on t_stop when the step was capped by it
            report.t_new = dt == remaining ? t_stop : t + dt;
            report.dt_used = dt;
            z = std::move(out);
            return report;
        }
        dt *= 0.5;
    }
    throw NumericalError("step: rejected after " + std::to_string(cfg_.max_halvings) +
                         " halvings at t=" + format_double(t));
}

std::pair<State, StepReport> step(const State& z, double t, const SimulationConfig& cfg)
{
    Stepper stepper(cfg);
    State next = z;
    StepReport report = stepper.advance(next, t, cfg.t_end);
    return {std::move(next), report};
}

const DiagnosticsRecord& RunResult::last() const
{
    return series.empty() ? initial : series.back();
}

std::vector<DiagnosticsRecord> RunResult::records() const
{
    std::vector<DiagnosticsRecord> out;
    out.reserve(series.size() + 1);
    out.push_back(initial);
    out.insert(out.end(), series.begin(), series.end());
    return out;
}

RunResult run(const SimulationConfig& cfg, const RunOptions& options)
{
    cfg.validate();
    const std::size_t cadence = std::max<std::size_t>(options.cadence, 1);
    RunResult result;
    State z = cfg.initial;
    double t = 0.0;

    std::optional<EnvelopeContext> envelope;
    if (attractor_condition(cfg.params).holds) {
        envelope = EnvelopeContext{energy_Y(z, EnergyVariant::proof), cfg.params,
                                   cfg.grid.volume(), options.influx_bound};
    }
    const State* target = options.target ? &*options.target : nullptr;
    const EnvelopeContext* env = envelope ? &*envelope : nullptr;

    auto notify = [&](std::size_t step_index, const DiagnosticsRecord& rec) {
        for (const auto& obs : options.observers) {
            try {
                obs(Observation{step_index, t, &z, &rec});
            } catch (const std::exception& e) {
                ++result.observer_errors;
                std::cerr << "observer error at t=" << format_double(t) << ": " << e.what() << '\n';
            }
        }
    };

    result.initial = compute_diagnostics(z, t, target, env);
    result.global_min = *std::min_element(result.initial.min_values.begin(),
                                          result.initial.min_values.end());
    notify(0, result.initial);

    Stepper stepper(cfg);
    std::size_t step_index = 0;
    while (t < cfg.t_end) {
        StepReport report;
        try {
            report = stepper.advance(z, t, cfg.t_end);
        } catch (const NumericalError& e) {
            result.aborted = true;
            result.abort_reason = e.what();
            break;
        }
        ++step_index;
        t = report.t_new;
        result.steps.push_back(report);
        for (double m : report.min_values) {
            result.global_min = std::min(result.global_min, m);
        }
        if (step_index % cadence == 0 || t >= cfg.t_end) {
            result.series.push_back(compute_diagnostics(z, t, target, env));
            notify(step_index, result.series.back());
        }
    }
    result.final_state = std::move(z);
    result.t_final = t;
    return result;
}

}  // namespace epidiff
