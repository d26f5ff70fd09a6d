#include "epidiff/sweep.hpp"

#include <ostream>

#include "epidiff/errors.hpp"
#include "epidiff/format.hpp"
#include "epidiff/parallel.hpp"
#include "epidiff/steady_state.hpp"

namespace epidiff {

std::vector<std::vector<double>> sweep_points(const SweepSpec& spec)
{
    std::vector<std::vector<double>> out{{}};
    for (const auto& axis : spec.axes) {
        if (axis.count < 2) {
            throw ConfigError("sweep.axes: " + axis.name + " needs at least two points");
        }
        std::vector<std::vector<double>> next;
        next.reserve(out.size() * axis.count);
        for (const auto& prefix : out) {
            for (std::size_t k = 0; k < axis.count; ++k) {
                const double frac = static_cast<double>(k) / static_cast<double>(axis.count - 1);
                auto p = prefix;
                p.push_back(k + 1 == axis.count ? axis.max : axis.min + frac * (axis.max - axis.min));
                next.push_back(std::move(p));
            }
        }
        out = std::move(next);
    }
    return out;
}

std::vector<SweepPoint> run_sweep(const SimulationConfig& base, const SweepSpec& spec,
                                  std::size_t threads)
{
    const auto values = sweep_points(spec);
    std::vector<SweepPoint> points(values.size());
    parallel_for(values.size(), threads, [&](std::size_t n) {
        SimulationConfig cfg = base;
        for (std::size_t a = 0; a < spec.axes.size(); ++a) {
            set_parameter(cfg.params, spec.axes[a].name, values[n][a]);
        }
        cfg.t_end = spec.t_end;
        cfg.validate();
        RunOptions opt;
        opt.cadence = static_cast<std::size_t>(-1);
        opt.influx_bound = cfg.influx.upper();
        opt.target = attractor_target(steady_problem_from(cfg));
        const RunResult r = run(cfg, opt);
        SweepPoint& p = points[n];
        p.values = values[n];
        p.margin = attractor_condition(cfg.params).margin;
        p.aborted = r.aborted;
        p.ratio = r.initial.J > 0.0 ? r.last().J / r.initial.J : 0.0;
        p.attractor = !r.aborted && p.ratio < spec.threshold;
    });
    return points;
}

void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepPoint>& points)
{
    for (const auto& axis : spec.axes) {
        os << axis.name << ',';
    }
    os << "margin,J_ratio,classification\n";
    for (const auto& p : points) {
        for (double v : p.values) {
            os << format_double(v) << ',';
        }
        os << format_double(p.margin) << ',' << format_double(p.ratio) << ','
           << (p.aborted ? "aborted" : (p.attractor ? "attractor" : "persistent")) << '\n';
    }
}

bool classification_monotone(const std::vector<SweepPoint>& points)
{
    std::size_t changes = 0;
    for (std::size_t k = 1; k < points.size(); ++k) {
        changes += points[k].attractor != points[k - 1].attractor ? 1 : 0;
    }
    return changes <= 1;
}

}  // namespace epidiff
