#include "epidiff/mms.hpp"

#include <cmath>
#include <numbers>

#include "epidiff/errors.hpp"
#include "epidiff/steady_state.hpp"

namespace epidiff::mms {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kBase[4] = {1.5, 1.0, 0.8, 1.2};
constexpr double kAmp[4] = {0.4, 0.3, 0.2, 0.4};
constexpr double kDiff[4] = {0.1, 0.05, 0.08, 0.03};

double phi(double x, double y)
{
    return std::cos(pi * x) * std::cos(pi * y);
}

double psi(int k, double t)
{
    return 1.0 + 0.5 * std::sin(t + k);
}

double dpsi(int k, double t)
{
    return 0.5 * std::cos(t + k);
}

// d_k = kDiff[k] * m_k(x, y) * tau_k(t)
double space_factor(int k, double x, double y)
{
    switch (k) {
    case 0: return 1.0 + 0.5 * x * y;
    case 1: return 1.0 + 0.5 * x * y;
    case 2: return 1.0;
    default: return 1.0 + 0.3 * (x + y);
    }
}

void space_factor_grad(int k, double x, double y, double& mx, double& my)
{
    switch (k) {
    case 0:
    case 1:
        mx = 0.5 * y;
        my = 0.5 * x;
        return;
    case 2:
        mx = 0.0;
        my = 0.0;
        return;
    default:
        mx = 0.3;
        my = 0.3;
    }
}

double time_factor(int k, double t)
{
    return k == 0 ? 1.0 + 0.25 * std::sin(t) : 1.0;
}

RunOptions final_only()
{
    RunOptions opt;
    opt.cadence = static_cast<std::size_t>(-1);
    return opt;
}

}  // namespace

double CoupledProblem::exact(int k, double x, double y, double t) const
{
    return kBase[k] + kAmp[k] * phi(x, y) * psi(k, t);
}

double CoupledProblem::diffusion(int k, double x, double y, double t) const
{
    return kDiff[k] * space_factor(k, x, y) * time_factor(k, t);
}

double CoupledProblem::influx(double x, double, double) const
{
    return 1.0 + 0.5 * std::sin(pi * x);
}

double CoupledProblem::source(int k, double x, double y, double t) const
{
    const double amp = kAmp[k] * psi(k, t);
    const double ut = kAmp[k] * phi(x, y) * dpsi(k, t);
    const double ux = -pi * amp * std::sin(pi * x) * std::cos(pi * y);
    const double uy = -pi * amp * std::cos(pi * x) * std::sin(pi * y);
    const double lap = -2.0 * pi * pi * amp * phi(x, y);
    double mx = 0.0;
    double my = 0.0;
    space_factor_grad(k, x, y, mx, my);
    const double scale = kDiff[k] * time_factor(k, t);
    const double div_flux = scale * (space_factor(k, x, y) * lap + mx * ux + my * uy);

    const double S = exact(0, x, y, t);
    const double I = exact(1, x, y, t);
    const double R = exact(2, x, y, t);
    const double B = exact(3, x, y, t);
    const Parameters& p = params;
    const double h = B / (B + p.K);
    double f = 0.0;
    switch (k) {
    case 0: f = influx(x, y, t) - p.beta1 * S * I - p.beta2 * S * h - p.d * S + p.sigma * R; break;
    case 1: f = p.beta1 * S * I + p.beta2 * S * h - (p.d + p.gamma) * I; break;
    case 2: f = p.gamma * I - (p.d + p.sigma) * R; break;
    default: f = p.xi * I + p.g * B * (1.0 - B / p.K) - p.delta * B; break;
    }
    return ut - div_flux - f;
}

SimulationConfig CoupledProblem::config(std::size_t n, double dt, double t_end, int dim) const
{
    SimulationConfig cfg;
    cfg.grid = dim == 2 ? Grid(n, n, 1.0, 1.0) : Grid(n, 1.0);
    cfg.params = params;
    cfg.params.velocity.assign(static_cast<std::size_t>(dim), 0.0);
    for (int k = 0; k < 4; ++k) {
        const double lo = kDiff[k] * 0.5;
        const double hi = kDiff[k] * 2.0;
        const auto kind = k == 0 ? CoefficientKind::space_time_varying
                                 : (k == 2 ? CoefficientKind::constant : CoefficientKind::space_varying);
        cfg.diffusion[k] = CoefficientSampler::function(
            [this, k](double x, double y, double t) { return diffusion(k, x, y, t); }, kind, lo, hi,
            "manufactured d" + std::to_string(k + 1));
    }
    cfg.influx = CoefficientSampler::function(
        [this](double x, double y, double t) { return influx(x, y, t); },
        CoefficientKind::space_varying, 0.0, 1.5, "manufactured b");
    cfg.initial = exact_state(cfg.grid, 0.0);
    cfg.t_end = t_end;
    cfg.dt_max = dt;
    cfg.solver_tol = 1e-12;
    cfg.positivity_safety = 1.0;
    cfg.source = [this](int k, double x, double y, double t) { return source(k, x, y, t); };
    return cfg;
}

State CoupledProblem::exact_state(const Grid& grid, double t) const
{
    State z;
    for (int k = 0; k < 4; ++k) {
        z[k] = Field::from_function(grid, [this, k, t](double x, double y) { return exact(k, x, y, t); });
    }
    return z;
}

CoupledProblem default_problem()
{
    CoupledProblem prob;
    prob.params.d = 1.0;
    prob.params.gamma = 0.5;
    prob.params.sigma = 0.3;
    prob.params.delta = 0.7;
    prob.params.xi = 0.4;
    prob.params.g = 0.2;
    prob.params.K = 1.0;
    prob.params.beta1 = 0.5;
    prob.params.beta2 = 0.6;
    return prob;
}

double state_error(const State& z, const State& exact)
{
    double s = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        require_same_grid(z[k], exact[k], "state_error");
        for (std::size_t c = 0; c < z[k].size(); ++c) {
            const double e = z[k][c] - exact[k][c];
            s += e * e;
        }
    }
    return std::sqrt(s * z[0].grid().cell_volume());
}

double fitted_order(const std::vector<double>& h, const std::vector<double>& error)
{
    if (h.size() != error.size() || h.size() < 2) {
        throw ContractViolation("fitted_order: need at least two matching samples");
    }
    const double n = static_cast<double>(h.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k) {
        const double x = std::log(h[k]);
        const double y = std::log(error[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

OrderStudy coupled_spatial_order(const CoupledProblem& prob, const std::vector<std::size_t>& cells,
                                 double t_end, double dt_factor)
{
    OrderStudy study;
    for (std::size_t n : cells) {
        const double h = 1.0 / static_cast<double>(n);
        const double dt = t_end / std::ceil(t_end / (dt_factor * h * h));
        const SimulationConfig cfg = prob.config(n, dt, t_end);
        const RunResult res = run(cfg, final_only());
        if (res.aborted) {
            throw NumericalError("manufactured run aborted: " + res.abort_reason);
        }
        study.steps.push_back(h);
        study.errors.push_back(state_error(res.final_state, prob.exact_state(cfg.grid, t_end)));
    }
    study.order = fitted_order(study.steps, study.errors);
    return study;
}

OrderStudy coupled_temporal_order(const CoupledProblem& prob, std::size_t cells,
                                  const std::vector<double>& dts, double t_end)
{
    OrderStudy study;
    for (double dt : dts) {
        const SimulationConfig cfg = prob.config(cells, dt, t_end);
        const RunResult res = run(cfg, final_only());
        if (res.aborted) {
            throw NumericalError("manufactured run aborted: " + res.abort_reason);
        }
        study.steps.push_back(dt);
        study.errors.push_back(state_error(res.final_state, prob.exact_state(cfg.grid, t_end)));
    }
    study.order = fitted_order(study.steps, study.errors);
    return study;
}

OrderStudy diffusion_spatial_order(const std::vector<std::size_t>& cells, double t_end,
                                   double dt_factor)
{
    auto coeff = [](double x, double y) { return 0.1 * (1.0 + 0.5 * x * y); };
    auto exact = [](double x, double y, double t) { return 1.0 + phi(x, y) * std::exp(-t); };
    auto source = [&](double x, double y, double t) {
        const double amp = std::exp(-t);
        const double ux = -pi * amp * std::sin(pi * x) * std::cos(pi * y);
        const double uy = -pi * amp * std::cos(pi * x) * std::sin(pi * y);
        const double lap = -2.0 * pi * pi * amp * phi(x, y);
        const double div_flux = coeff(x, y) * lap + 0.1 * (0.5 * y * ux + 0.5 * x * uy);
        return -amp * phi(x, y) - div_flux;
    };
    OrderStudy study;
    for (std::size_t n : cells) {
        const Grid grid(n, n, 1.0, 1.0);
        const double h = 1.0 / static_cast<double>(n);
        const std::size_t steps = static_cast<std::size_t>(std::ceil(t_end / (dt_factor * h * h)));
        const double dt = t_end / static_cast<double>(steps);
        const DiffusionStencil st(Field::from_function(grid, coeff));
        Field u = Field::from_function(grid, [&](double x, double y) { return exact(x, y, 0.0); });
        SolveOptions opt;
        opt.tol = 1e-12;
        opt.reference = ResidualReference::initial_residual;
        for (std::size_t s = 1; s <= steps; ++s) {
            const double t = dt * static_cast<double>(s);
            Field rhs = u;
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t i = 0; i < n; ++i) {
                    rhs[grid.index(i, j)] += dt * source(grid.x_center(i), grid.y_center(j), t);
                }
            }
            u = rhs;
            const auto rep = solve_implicit(st, 1.0, -dt, rhs.values(), u.values(), opt);
            if (!rep.converged) {
                throw NumericalError("diffusion manufactured solve did not converge");
            }
        }
        const Field ex = Field::from_function(grid, [&](double x, double y) { return exact(x, y, t_end); });
        double err = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
            err += (u[k] - ex[k]) * (u[k] - ex[k]);
        }
        study.steps.push_back(h);
        study.errors.push_back(std::sqrt(err * grid.cell_volume()));
    }
    study.order = fitted_order(study.steps, study.errors);
    return study;
}

OrderStudy steady_spatial_order(const std::vector<std::size_t>& cells)
{
    constexpr double rate = 11.0;
    auto exact = [](double x) { return 2.0 + std::cos(pi * x); };
    OrderStudy study;
    for (std::size_t n : cells) {
        SteadyProblem prob;
        prob.grid = Grid(n, 1.0);
        prob.d = rate;
        prob.d1_inf = Field(prob.grid, 1.0);
        prob.b0_profile = Field::from_function(
            prob.grid, [&](double x, double) { return pi * pi * std::cos(pi * x) + rate * exact(x); });
        const SteadySolution sol = solve_s_infinity(prob, 1e-13);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = sol.s_infinity[i] - exact(prob.grid.x_center(i));
            err += e * e;
        }
        study.steps.push_back(prob.grid.hx());
        study.errors.push_back(std::sqrt(err * prob.grid.cell_volume()));
    }
    study.order = fitted_order(study.steps, study.errors);
    return study;
}

}  // namespace epidiff::mms
