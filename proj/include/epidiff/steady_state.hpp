#pragma once

#include "epidiff/grid.hpp"
#include "epidiff/linear_solver.hpp"

namespace epidiff {

struct SimulationConfig;

/// -div(d1_inf grad S) = b0 - d S with zero flux on the boundary.
struct SteadyProblem {
    Grid grid;
    Field d1_inf;
    Field b0_profile;
    double d = 1.0;

    void validate() const;
};

/// Limits of d1 and b from a simulation config (ConfigError when a
/// time-dependent coefficient has no configured limit).
SteadyProblem steady_problem_from(const SimulationConfig& cfg);

struct SteadySolution {
    Field s_infinity;
    SolveReport report;
    /// ||b0 - (d I - L) S||_2 / ||b0||_2 recomputed from the returned field.
    double residual = 0.0;
};

inline constexpr double kSteadyTolerance = 1e-10;

/// Throws NumericalError with the residual when the solver does not converge.
SteadySolution solve_s_infinity(const SteadyProblem& prob, double tol = kSteadyTolerance);

/// (S_inf, 0, 0, 0).
State attractor_target(const SteadyProblem& prob, double tol = kSteadyTolerance);

}  // namespace epidiff
