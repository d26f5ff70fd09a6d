#pragma once

#include <cstddef>
#include <vector>

#include "epidiff/stepper.hpp"

namespace epidiff::mms {

/// Manufactured solution of the full four-species system on [0,1]^2:
///
///   u_k(x, y, t) = a_k + c_k cos(pi x) cos(pi y) (1 + 0.5 sin(t + k))
///
/// with smooth variable diffusion coefficients (d1 also varying in time) and
/// influx. The additive source s_k = du_k/dt - div(d_k grad u_k) - f_k(u)
/// makes u_k an exact solution; the cosine profile has zero normal
/// derivative on the boundary.
struct CoupledProblem {
    Parameters params;

    double exact(int species, double x, double y, double t) const;
    double source(int species, double x, double y, double t) const;
    double diffusion(int species, double x, double y, double t) const;
    double influx(double x, double y, double t) const;

    /// Configuration on an n x n grid (or n cells in 1D) with the given step.
    SimulationConfig config(std::size_t n, double dt, double t_end, int dim = 2) const;
    State exact_state(const Grid& grid, double t) const;
};

CoupledProblem default_problem();

/// Volume-weighted L2 error summed over the four species.
double state_error(const State& z, const State& exact);

/// Least-squares slope of log(error) against log(h).
double fitted_order(const std::vector<double>& h, const std::vector<double>& error);

struct OrderStudy {
    std::vector<double> steps;   // h or dt
    std::vector<double> errors;
    double order = 0.0;
};

/// Coupled system, dt = dt_factor * h^2 so both error sources scale as h^2.
OrderStudy coupled_spatial_order(const CoupledProblem& prob, const std::vector<std::size_t>& cells,
                                 double t_end = 0.1, double dt_factor = 0.5);

/// Coupled system on a fixed fine grid for a sequence of time steps.
OrderStudy coupled_temporal_order(const CoupledProblem& prob, std::size_t cells,
                                  const std::vector<double>& dts, double t_end = 1.0);

/// Scalar u_t = div(d grad u) + s with backward Euler, u = 1 + cos(pi x)cos(pi y) e^{-t}.
OrderStudy diffusion_spatial_order(const std::vector<std::size_t>& cells, double t_end = 0.1,
                                   double dt_factor = 0.25);

/// Steady 1D problem (d I - L)S = b0 on [0,1] with d1 = 1, S* = 2 + cos(pi x), d = 11
/// (so b0 = -S*'' + d S* stays nonnegative). Error is measured against S* at cell centers.
OrderStudy steady_spatial_order(const std::vector<std::size_t>& cells);

}  // namespace epidiff::mms
