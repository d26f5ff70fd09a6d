#pragma once

#include <span>
#include <vector>

#include "epidiff/coefficients.hpp"
#include "epidiff/grid.hpp"
#include "epidiff/kernels.hpp"

namespace epidiff {

/// Discrete div(d grad u) with face coefficients taken as the arithmetic mean
/// of the two adjacent cell samples and zero flux through the domain boundary.
class DiffusionStencil {
public:
    DiffusionStencil() = default;
    /// `cell_coefficients` holds d sampled at cell centers.
    explicit DiffusionStencil(const Field& cell_coefficients);

    const Grid& grid() const { return grid_; }
    kernels::StencilView view() const;
    /// Diagonal of alpha * I + beta * L.
    std::vector<double> diagonal(double alpha, double beta) const;
    /// Weight of the face between cells k and its neighbor in direction dir (0=W,1=E,2=S,3=N).
    double face_weight(std::size_t k, int dir) const;

private:
    Grid grid_;
    std::vector<double> west_;
    std::vector<double> east_;
    std::vector<double> south_;
    std::vector<double> north_;
};

/// out = alpha * u + beta * L u on the stencil's grid.
void apply_stencil(const DiffusionStencil& st, std::span<const double> u, std::span<double> out,
                   double alpha, double beta);

Field diffuse(const Field& u, const DiffusionStencil& st);
Field diffuse(const Field& u, const CoefficientSampler& coeff, double t);

/// -sum_k v_k dB/dx_k by first-order upwinding. The upwind neighbor of an
/// inflow boundary cell is its mirror ghost, so the boundary cell sees zero
/// gradient (consistent with the zero-flux condition).
Field convect(const Field& B, std::span<const double> velocity);

/// Destruction rate contributed by upwind convection: sum_k |v_k| / h_k.
double convection_rate(const Grid& grid, std::span<const double> velocity);

enum class Reduction { l1, l2sq, min, max };

/// l1 = sum |u| dV, l2sq = sum u^2 dV, min/max over cells.
double field_reduce(const Field& u, Reduction kind);

/// sum u dV (signed).
double integrate(const Field& u);

}  // namespace epidiff
