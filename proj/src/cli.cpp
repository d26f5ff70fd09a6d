#include "epidiff/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include "epidiff/config.hpp"
#include "epidiff/errors.hpp"
#include "epidiff/format.hpp"
#include "epidiff/snapshot.hpp"
#include "epidiff/steady_state.hpp"
#include "epidiff/sweep.hpp"
#include "epidiff/verification.hpp"

namespace epidiff {

namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const fs::path& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw ConfigError("cannot write " + path.string());
    }
    return os;
}

void prepare_out_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw ConfigError("output directory " + dir.string() + " cannot be created");
    }
    const fs::path probe = dir / ".epidiff_write_probe";
    {
        std::ofstream os(probe);
        if (!os) {
            throw ConfigError("output directory " + dir.string() + " is not writable");
        }
    }
    fs::remove(probe, ec);
}

std::string snapshot_name(std::size_t step)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "snapshot_%06zu.txt", step);
    return buf;
}

std::optional<State> optional_target(const SimulationConfig& cfg)
{
    if (!cfg.diffusion[0].has_limit() || !cfg.influx.has_limit()) {
        return std::nullopt;
    }
    return attractor_target(steady_problem_from(cfg));
}

int simulate(const RunSpec& spec, const Scenario& sc, std::ostream& log)
{
    RunOptions opt;
    opt.cadence = spec.cadence;
    opt.influx_bound = sc.sim.influx.upper();
    opt.target = optional_target(sc.sim);
    opt.observers.push_back([&](const Observation& obs) {
        std::ofstream os = open_output(spec.out_dir / snapshot_name(obs.step));
        write_snapshot(os, make_snapshot(*obs.state, obs.t));
        if (!os) {
            throw ConfigError("write failed for " + snapshot_name(obs.step));
        }
    });
    const RunResult r = run(sc.sim, opt);
    {
        std::ofstream os = open_output(spec.out_dir / "diagnostics.csv");
        write_diagnostics_csv(os, r.records());
    }
    log << "simulate: " << r.steps.size() << " steps to t=" << format_double(r.t_final)
        << ", global min " << format_double(r.global_min) << '\n';
    if (r.observer_errors > 0) {
        log << "error: " << r.observer_errors << " snapshot writes failed\n";
        return kExitConfigError;
    }
    if (r.aborted) {
        log << "numerical abort: " << r.abort_reason << '\n';
        return kExitNumericalAbort;
    }
    return kExitOk;
}

int steady(const RunSpec& spec, const Scenario& sc, std::ostream& log)
{
    const SteadyProblem prob = steady_problem_from(sc.sim);
    const SteadySolution sol = solve_s_infinity(prob);
    {
        std::ofstream os = open_output(spec.out_dir / "s_infinity.txt");
        write_snapshot(os, make_snapshot(sol.s_infinity, "S_inf", 0.0));
    }
    double lo = prob.b0_profile[0] / prob.d;
    double hi = lo;
    for (std::size_t k = 0; k < prob.grid.size(); ++k) {
        lo = std::min(lo, prob.b0_profile[k] / prob.d);
        hi = std::max(hi, prob.b0_profile[k] / prob.d);
    }
    const double s_min = field_reduce(sol.s_infinity, Reduction::min);
    const double s_max = field_reduce(sol.s_infinity, Reduction::max);
    std::ofstream os = open_output(spec.out_dir / "steady_report.txt");
    os << "method=" << (sol.report.method == SolverMethod::tridiagonal ? "tridiagonal" : "cg") << '\n'
       << "iterations=" << sol.report.iterations << '\n'
       << "relative_residual=" << format_double(sol.residual) << '\n'
       << "tolerance=" << format_double(kSteadyTolerance) << '\n'
       << "converged=" << (sol.report.converged ? "true" : "false") << '\n'
       << "s_min=" << format_double(s_min) << '\n'
       << "s_max=" << format_double(s_max) << '\n'
       << "b0_over_d_min=" << format_double(lo) << '\n'
       << "b0_over_d_max=" << format_double(hi) << '\n';
    log << "steady: residual " << format_double(sol.residual) << " after "
        << sol.report.iterations << " iterations\n";
    return kExitOk;
}

int verify(const RunSpec& spec, const Scenario& sc, std::ostream& log)
{
    const auto verdicts = verify_all(sc.sim, sc.verify.seeds, spec.seed,
                                     sc.verify.nonnegativity_t_end, spec.threads);
    std::ofstream os = open_output(spec.out_dir / "verdicts.txt");
    for (const auto& v : verdicts) {
        const std::string text = format_verdict(v);
        os << text;
        log << text;
    }
    const bool ok = all_pass(verdicts);
    os << (ok ? "overall PASS\n" : "overall FAIL\n");
    log << (ok ? "overall PASS\n" : "overall FAIL\n");
    return ok ? kExitOk : kExitVerificationFailed;
}

int sweep(const RunSpec& spec, const Scenario& sc, std::ostream& log)
{
    if (!sc.sweep) {
        throw ConfigError("sweep mode needs a [sweep] section");
    }
    const auto points = run_sweep(sc.sim, *sc.sweep, spec.threads);
    {
        std::ofstream os = open_output(spec.out_dir / "sweep.csv");
        write_sweep_csv(os, *sc.sweep, points);
    }
    std::size_t attractor = 0;
    std::size_t aborted = 0;
    for (const auto& p : points) {
        attractor += p.attractor ? 1 : 0;
        aborted += p.aborted ? 1 : 0;
    }
    log << "sweep: " << points.size() << " points, " << attractor << " reach the attractor\n";
    if (aborted > 0) {
        log << "numerical abort at " << aborted << " points\n";
        return kExitNumericalAbort;
    }
    return kExitOk;
}

}  // namespace

int run_cli(const RunSpec& spec, std::ostream& log)
{
    try {
        if (spec.cadence < 1) {
            throw ConfigError("--cadence must be at least 1");
        }
        prepare_out_dir(spec.out_dir);
        const Scenario sc = load_config(spec.config_path, spec.seed);
        {
            std::ofstream os = open_output(spec.out_dir / "effective_config.ini");
            os << dump_config(sc);
        }
        switch (spec.mode) {
        case Mode::simulate: return simulate(spec, sc, log);
        case Mode::steady: return steady(spec, sc, log);
        case Mode::verify: return verify(spec, sc, log);
        case Mode::sweep: return sweep(spec, sc, log);
        }
        return kExitConfigError;
    } catch (const ConfigError& e) {
        log << "configuration error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const DomainError& e) {
        log << "configuration error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const NumericalError& e) {
        log << "numerical abort: " << e.what() << '\n';
        return kExitNumericalAbort;
    }
}

int cli_main(int argc, char** argv)
{
    CLI::App app{"Reaction-diffusion SIRS-B solver and verification harness", "epidiff"};
    RunSpec spec;
    const std::map<std::string, Mode> modes{{"simulate", Mode::simulate},
                                            {"steady", Mode::steady},
                                            {"verify", Mode::verify},
                                            {"sweep", Mode::sweep}};
    std::string out = ".";
    app.add_option("--mode", spec.mode, "simulate | steady | verify | sweep")
        ->required()
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
    app.add_option("--config", spec.config_path, "scenario file")->required();
    app.add_option("--out", out, "output directory");
    app.add_option("--seed", spec.seed, "seed for initial-data noise and randomized suites");
    app.add_option("--threads", spec.threads, "worker threads for independent runs")
        ->check(CLI::Range(std::size_t{1}, std::size_t{1024}));
    app.add_option("--cadence", spec.cadence, "snapshot and diagnostics cadence in steps")
        ->check(CLI::Range(std::size_t{1}, static_cast<std::size_t>(-1)));
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }
    spec.out_dir = out;
    return run_cli(spec, std::cerr);
}

}  // namespace epidiff
