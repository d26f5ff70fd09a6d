#pragma once

#include <cstddef>
#include <span>

#include "epidiff/operators.hpp"

namespace epidiff {

enum class SolverMethod {
    automatic,    // tridiagonal direct solve in 1D, conjugate gradients in 2D
    cg,           // Jacobi-preconditioned conjugate gradients
    tridiagonal,  // 1D only
};

/// What the relative residual is measured against.
enum class ResidualReference {
    rhs,               // ||r|| <= tol * ||rhs||
    initial_residual,  // ||r|| <= tol * ||rhs - A x0||
};

struct SolveOptions {
    double tol = 1e-10;
    /// 0 selects 10 * cells.
    std::size_t max_iterations = 0;
    SolverMethod method = SolverMethod::automatic;
    ResidualReference reference = ResidualReference::rhs;
};

struct SolveReport {
    std::size_t iterations = 0;
    double relative_residual = 0.0;
    bool converged = true;
    SolverMethod method = SolverMethod::cg;
};

/// Solves (alpha I + beta L) x = rhs where L is the diffusion stencil.
/// `x` carries the initial guess in and the solution out. The matrix must be
/// symmetric positive definite (alpha > 0, beta <= 0).
SolveReport solve_implicit(const DiffusionStencil& stencil, double alpha, double beta,
                           std::span<const double> rhs, std::span<double> x,
                           const SolveOptions& options = {});

/// ||rhs - (alpha I + beta L) x||_2 / ||rhs||_2 (0 when rhs is 0 and x solves it).
double relative_residual(const DiffusionStencil& stencil, double alpha, double beta,
                         std::span<const double> rhs, std::span<const double> x);

}  // namespace epidiff
