#include "epidiff/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "epidiff/errors.hpp"
#include "epidiff/format.hpp"
#include "epidiff/parallel.hpp"
#include "epidiff/steady_state.hpp"

namespace epidiff {

Criterion at_most(std::string name, double measured, double threshold)
{
    return {std::move(name), measured, threshold, "<=", measured <= threshold};
}

Criterion at_least(std::string name, double measured, double threshold)
{
    return {std::move(name), measured, threshold, ">=", measured >= threshold};
}

Criterion within(std::string name, double measured, double lo, double hi)
{
    return {std::move(name), measured, lo, "in", measured >= lo && measured <= hi, hi};
}

void VerificationVerdict::add(Criterion c)
{
    pass = pass && c.pass;
    criteria.push_back(std::move(c));
}

void VerificationVerdict::skip(const std::string& reason)
{
    applicable = false;
    pass = false;
    metadata["inapplicable"] = reason;
}

std::string format_verdict(const VerificationVerdict& v)
{
    std::ostringstream os;
    if (!v.applicable) {
        os << v.suite << " inapplicable: " << v.metadata.at("inapplicable") << '\n';
    }
    for (const auto& c : v.criteria) {
        os << v.suite << ' ' << c.name << " measured=" << format_double(c.measured) << " threshold=";
        if (c.relation == "in") {
            os << "in[" << format_double(c.threshold) << ',' << format_double(c.upper) << ']';
        } else {
            os << c.relation << format_double(c.threshold);
        }
        os << (c.pass ? " PASS" : " FAIL") << '\n';
    }
    for (const auto& [key, value] : v.metadata) {
        if (key != "inapplicable") {
            os << v.suite << " meta " << key << '=' << value << '\n';
        }
    }
    if (v.applicable) {
        os << v.suite << (v.pass ? " PASS" : " FAIL") << '\n';
    }
    return os.str();
}

bool all_pass(const std::vector<VerificationVerdict>& verdicts)
{
    return std::all_of(verdicts.begin(), verdicts.end(),
                       [](const VerificationVerdict& v) { return !v.applicable || v.pass; });
}

SimulationConfig randomized_config(const SimulationConfig& base, std::uint64_t seed, double t_end)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> rate(0.1, 2.0);
    std::uniform_real_distribution<double> value(0.0, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SimulationConfig cfg = base;
    Parameters& p = cfg.params;
    for (double* r : {&p.d, &p.gamma, &p.sigma, &p.delta, &p.xi, &p.g, &p.K, &p.beta1, &p.beta2}) {
        *r = rate(rng);
    }
    for (auto& f : cfg.initial) {
        f = Field(cfg.grid);
        for (std::size_t k = 0; k < f.size(); ++k) {
            // about one cell in ten starts exactly at zero
            f[k] = unit(rng) < 0.1 ? 0.0 : value(rng);
        }
    }
    cfg.t_end = t_end;
    return cfg;
}

RandomizedStudy randomized_runs(const SimulationConfig& base, std::size_t seeds,
                                std::uint64_t seed, double t_end, std::size_t threads)
{
    RandomizedStudy study;
    study.configs.reserve(seeds);
    for (std::size_t s = 0; s < seeds; ++s) {
        study.configs.push_back(randomized_config(base, seed + s, t_end));
    }
    study.results.resize(seeds);
    parallel_for(seeds, threads, [&](std::size_t s) {
        RunOptions opt;
        opt.influx_bound = study.configs[s].influx.upper();
        study.results[s] = run(study.configs[s], opt);
    });
    return study;
}

VerificationVerdict verify_nonnegativity(const RandomizedStudy& study)
{
    VerificationVerdict v;
    v.suite = "nonnegativity";
    double global_min = std::numeric_limits<double>::infinity();
    std::size_t aborted = 0;
    std::size_t steps = 0;
    for (const auto& r : study.results) {
        global_min = std::min(global_min, r.global_min);
        aborted += r.aborted ? 1 : 0;
        steps += r.steps.size();
        if (r.aborted && !v.metadata.contains("abort_reason")) {
            v.metadata["abort_reason"] = r.abort_reason;
        }
    }
    v.add(at_least("global_min", global_min, -kNegativityTolerance));
    v.add(at_most("aborted_runs", static_cast<double>(aborted), 0.0));
    v.metadata["runs"] = std::to_string(study.results.size());
    v.metadata["accepted_steps"] = std::to_string(steps);
    return v;
}

VerificationVerdict verify_nonnegativity(const SimulationConfig& base, std::size_t seeds,
                                         std::uint64_t seed, double t_end, std::size_t threads)
{
    return verify_nonnegativity(randomized_runs(base, seeds, seed, t_end, threads));
}

double host_mass_bound(const SimulationConfig& cfg)
{
    const double m0 = integrate(cfg.initial[0]) + integrate(cfg.initial[1]) + integrate(cfg.initial[2]);
    return std::max(m0, cfg.influx.upper() * cfg.grid.volume() / cfg.params.d);
}

double bacteria_mass_bound(const SimulationConfig& cfg)
{
    const Parameters& p = cfg.params;
    if (std::any_of(p.velocity.begin(), p.velocity.end(), [](double v) { return v != 0.0; })) {
        return std::numeric_limits<double>::infinity();
    }
    const double volume = cfg.grid.volume();
    const double c = host_mass_bound(cfg);
    const double m0 = integrate(cfg.initial[3]);
    double steady = 0.0;
    if (p.growth == GrowthLaw::logistic) {
        if (p.g == 0.0) {
            steady = p.xi * c / p.delta;
        } else {
            // positive root of xi C + (g - delta) m - g m^2 / (K |Omega|) = 0
            const double a = p.g / (p.K * volume);
            const double lin = p.g - p.delta;
            steady = (lin + std::sqrt(lin * lin + 4.0 * a * p.xi * c)) / (2.0 * a);
        }
    } else {
        steady = (p.xi * c + p.g * p.K * volume) / p.delta;
        if (p.g < p.delta) {
            steady = std::min(steady, p.xi * c / (p.delta - p.g));
        }
    }
    return std::max(m0, steady);
}

std::vector<Criterion> mass_bound_criteria(const SimulationConfig& cfg, const RunResult& result,
                                           const std::string& prefix)
{
    double host = result.initial.masses[0] + result.initial.masses[1] + result.initial.masses[2];
    double bact = result.initial.masses[3];
    for (const auto& rec : result.series) {
        host = std::max(host, rec.masses[0] + rec.masses[1] + rec.masses[2]);
        bact = std::max(bact, rec.masses[3]);
    }
    constexpr double slack = 1.0 + 1e-6;
    return {at_most(prefix + "sup_host_mass", host, host_mass_bound(cfg) * slack),
            at_most(prefix + "sup_bacteria_mass", bact, bacteria_mass_bound(cfg) * slack)};
}

VerificationVerdict verify_mass_bound(const RandomizedStudy& study)
{
    VerificationVerdict v;
    v.suite = "mass_bound";
    double worst_host = 0.0;
    double worst_bact = 0.0;
    std::size_t failures = 0;
    for (std::size_t s = 0; s < study.results.size(); ++s) {
        const auto crit = mass_bound_criteria(study.configs[s], study.results[s]);
        worst_host = std::max(worst_host, crit[0].measured / crit[0].threshold);
        worst_bact = std::max(worst_bact, crit[1].measured / crit[1].threshold);
        failures += (crit[0].pass && crit[1].pass) ? 0 : 1;
    }
    v.add(at_most("max_host_mass_over_bound", worst_host, 1.0));
    v.add(at_most("max_bacteria_mass_over_bound", worst_bact, 1.0));
    v.metadata["runs"] = std::to_string(study.results.size());
    v.metadata["failing_runs"] = std::to_string(failures);
    return v;
}

VerificationVerdict verify_mass_bound(const SimulationConfig& cfg)
{
    VerificationVerdict v;
    v.suite = "mass_bound";
    RunOptions opt;
    opt.influx_bound = cfg.influx.upper();
    const RunResult r = run(cfg, opt);
    for (auto& c : mass_bound_criteria(cfg, r)) {
        v.add(std::move(c));
    }
    if (r.aborted) {
        v.add(at_most("aborted", 1.0, 0.0));
        v.metadata["abort_reason"] = r.abort_reason;
    }
    return v;
}

double closed_form_host_mass(double m0, double b0, double volume, double d, double t)
{
    const double eq = b0 * volume / d;
    return (m0 - eq) * std::exp(-d * t) + eq;
}

namespace {

SimulationConfig mass_balance_config(double dt, double t_end)
{
    SimulationConfig cfg;
    cfg.grid = Grid(8, 8, 1.0, 1.0);
    Parameters& p = cfg.params;
    p.d = 1.0;
    p.gamma = p.sigma = p.beta1 = p.beta2 = 1.0;
    p.delta = 0.6;
    p.xi = 0.5;
    p.g = 0.1;
    p.K = 1.0;
    p.velocity = {0.0, 0.0};
    for (auto& c : cfg.diffusion) {
        c = CoefficientSampler::constant(0.1);
    }
    cfg.influx = CoefficientSampler::constant(1.0);
    cfg.initial = make_state(cfg.grid, 2.0, 0.5, 0.5, 0.2);
    cfg.t_end = t_end;
    cfg.dt_max = dt;
    cfg.solver_tol = 1e-12;
    return cfg;
}

}  // namespace

MassBalanceStudy mass_balance_study(const std::vector<double>& dts, double t_end)
{
    MassBalanceStudy study;
    for (double dt : dts) {
        const SimulationConfig cfg = mass_balance_config(dt, t_end);
        const RunResult r = run(cfg);
        if (r.aborted) {
            throw NumericalError("mass balance run aborted: " + r.abort_reason);
        }
        const double volume = cfg.grid.volume();
        const double m0 = r.initial.masses[0] + r.initial.masses[1] + r.initial.masses[2];
        double worst = 0.0;
        for (const auto& rec : r.series) {
            const double exact = closed_form_host_mass(m0, 1.0, volume, cfg.params.d, rec.t);
            const double m = rec.masses[0] + rec.masses[1] + rec.masses[2];
            worst = std::max(worst, std::abs(m - exact) / exact);
        }
        study.dts.push_back(dt);
        study.errors.push_back(worst);
    }
    study.order = dts.size() >= 2 ? mms::fitted_order(study.dts, study.errors) : 0.0;
    return study;
}

VerificationVerdict verify_mass_balance(const std::vector<double>& dts)
{
    VerificationVerdict v;
    v.suite = "mass_balance";
    const MassBalanceStudy study = mass_balance_study(dts);
    v.add(at_most("relative_error_finest_dt", study.errors.back(), 1e-3));
    v.add(within("temporal_order", study.order, 0.8, 1.2));
    for (std::size_t k = 0; k < study.dts.size(); ++k) {
        v.metadata["error_dt_" + format_double(study.dts[k])] = format_double(study.errors[k]);
    }
    return v;
}

double fitted_decay_rate(const std::vector<DiagnosticsRecord>& series, double t_from)
{
    double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& rec : series) {
        if (rec.t < t_from || !(rec.J > 0.0)) {
            continue;
        }
        const double y = std::log(rec.J);
        n += 1.0;
        sx += rec.t;
        sy += y;
        sxx += rec.t * rec.t;
        sxy += rec.t * y;
    }
    if (n < 2.0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

VerificationVerdict verify_attractor(const SimulationConfig& cfg, AttractorRun* details)
{
    VerificationVerdict v;
    v.suite = "attractor";
    const AttractorCondition cond = attractor_condition(cfg.params);
    v.metadata["margin"] = format_double(cond.margin);
    if (!cond.holds) {
        v.skip("d - g0 = " + format_double(cond.margin) + " is not positive");
        return v;
    }
    if (!cfg.diffusion[0].has_limit() || !cfg.influx.has_limit()) {
        v.skip("d1 and b need configured limits");
        return v;
    }
    RunOptions opt;
    opt.cadence = 1;
    opt.influx_bound = cfg.influx.upper();
    opt.target = attractor_target(steady_problem_from(cfg));
    const RunResult r = run(cfg, opt);
    if (r.aborted) {
        v.add(at_most("aborted", 1.0, 0.0));
        v.metadata["abort_reason"] = r.abort_reason;
        return v;
    }
    const auto& last = r.last();
    const double ratio = r.initial.J > 0.0 ? last.J / r.initial.J : 0.0;
    const double rate = fitted_decay_rate(r.series, 0.5 * r.t_final);
    const double b0 = cfg.influx.upper();
    const double volume = cfg.grid.volume();
    double sup_y4 = r.initial.Y4;
    double peak_j4 = r.initial.J_components[3];
    double envelope_excess = -std::numeric_limits<double>::infinity();
    for (const auto& rec : r.series) {
        sup_y4 = std::max(sup_y4, rec.Y4);
        peak_j4 = std::max(peak_j4, rec.J_components[3]);
        envelope_excess = std::max(envelope_excess, rec.Y3 - rec.envelope);
    }
    constexpr double eps = 1e-300;
    v.add(at_least("t_end", r.t_final, 40.0 / cond.margin));
    v.add(at_most("J_ratio", ratio, 1e-4));
    v.add(at_least("fitted_rate", rate, 0.5 * cond.margin * (1.0 - 0.5)));
    v.add(at_most("sup_Y4", sup_y4, 10.0 * (r.initial.Y4 + 2.0 * b0 * volume / cond.margin)));
    v.add(at_most("J4_end_over_peak", last.J_components[3] / std::max(peak_j4, eps), 1e-3));
    v.metadata["envelope_max_excess_Y3"] = format_double(envelope_excess);
    v.metadata["J0"] = format_double(r.initial.J);
    v.metadata["J_end"] = format_double(last.J);
    if (details) {
        details->margin = cond.margin;
        details->ratio = ratio;
        details->fitted_rate = rate;
        details->result = r;
    }
    return v;
}

VerificationVerdict verify_convergence_orders(const ConvergenceSettings& settings)
{
    VerificationVerdict v;
    v.suite = "convergence";
    const auto prob = mms::default_problem();
    const auto spatial = mms::coupled_spatial_order(prob, settings.spatial_cells);
    const auto temporal = mms::coupled_temporal_order(prob, settings.temporal_cells,
                                                      settings.temporal_dts, settings.temporal_t_end);
    const auto diffusion = mms::diffusion_spatial_order(settings.diffusion_cells);
    const auto steady = mms::steady_spatial_order(settings.steady_cells);
    v.add(within("coupled_spatial_order", spatial.order, 1.7, 2.3));
    v.add(within("coupled_temporal_order", temporal.order, 0.8, 1.2));
    v.add(within("diffusion_spatial_order", diffusion.order, 1.7, 2.3));
    v.add(within("steady_spatial_order", steady.order, 1.7, 2.3));
    auto record = [&](const std::string& key, const mms::OrderStudy& s) {
        for (std::size_t k = 0; k < s.steps.size(); ++k) {
            v.metadata[key + "_" + format_double(s.steps[k])] = format_double(s.errors[k]);
        }
    };
    record("coupled_spatial_error_h", spatial);
    record("coupled_temporal_error_dt", temporal);
    record("diffusion_error_h", diffusion);
    record("steady_error_h", steady);
    return v;
}

std::vector<VerificationVerdict> verify_all(const SimulationConfig& cfg, std::size_t seeds,
                                            std::uint64_t seed, double nonnegativity_t_end,
                                            std::size_t threads)
{
    std::vector<VerificationVerdict> out;
    const RandomizedStudy study = randomized_runs(cfg, seeds, seed, nonnegativity_t_end, threads);
    out.push_back(verify_nonnegativity(study));
    out.push_back(verify_mass_bound(study));
    out.push_back(verify_attractor(cfg));
    out.push_back(verify_mass_balance());
    out.push_back(verify_convergence_orders());
    return out;
}

}  // namespace epidiff
