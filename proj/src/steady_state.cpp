#include "epidiff/steady_state.hpp"

#include "epidiff/errors.hpp"
#include "epidiff/format.hpp"
#include "epidiff/stepper.hpp"

namespace epidiff {

void SteadyProblem::validate() const
{
    require_same_grid(d1_inf, b0_profile, "steady problem");
    if (!(d1_inf.grid() == grid)) {
        throw ContractViolation("steady problem: fields do not live on the problem grid");
    }
    if (!(d > 0.0)) {
        throw DomainError("steady problem: d must be positive");
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!(d1_inf[k] > 0.0)) {
            throw DomainError("steady problem: d1_inf must be positive");
        }
        if (!(b0_profile[k] >= 0.0)) {
            throw DomainError("steady problem: b0 must be nonnegative");
        }
    }
}

SteadyProblem steady_problem_from(const SimulationConfig& cfg)
{
    SteadyProblem prob;
    prob.grid = cfg.grid;
    if (!cfg.diffusion[0].has_limit()) {
        throw ConfigError("coefficients.d1.limit is required for the steady state");
    }
    if (!cfg.influx.has_limit()) {
        throw ConfigError("coefficients.b.limit is required for the steady state");
    }
    prob.d1_inf = cfg.diffusion[0].limit(cfg.grid);
    prob.b0_profile = cfg.influx.limit(cfg.grid);
    prob.d = cfg.params.d;
    return prob;
}

SteadySolution solve_s_infinity(const SteadyProblem& prob, double tol)
{
    prob.validate();
    const DiffusionStencil st(prob.d1_inf);
    SteadySolution sol;
    // b0/d solves the problem exactly wherever b0 is locally constant
    sol.s_infinity = Field(prob.grid);
    for (std::size_t k = 0; k < prob.grid.size(); ++k) {
        sol.s_infinity[k] = prob.b0_profile[k] / prob.d;
    }
    SolveOptions opt;
    opt.tol = tol;
    opt.reference = ResidualReference::rhs;
    sol.report = solve_implicit(st, prob.d, -1.0, prob.b0_profile.values(),
                                sol.s_infinity.values(), opt);
    sol.residual = relative_residual(st, prob.d, -1.0, prob.b0_profile.values(),
                                     sol.s_infinity.values());
    if (!sol.report.converged) {
        throw NumericalError("steady state: solver stopped at relative residual " +
                             format_double(sol.residual) + " after " +
                             std::to_string(sol.report.iterations) + " iterations");
    }
    return sol;
}

State attractor_target(const SteadyProblem& prob, double tol)
{
    auto sol = solve_s_infinity(prob, tol);
    const Grid& g = prob.grid;
    return {std::move(sol.s_infinity), Field(g), Field(g), Field(g)};
}

}  // namespace epidiff
