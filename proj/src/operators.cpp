#include "epidiff/operators.hpp"

#include <cmath>

#include "epidiff/errors.hpp"

namespace epidiff {

DiffusionStencil::DiffusionStencil(const Field& cell_coefficients)
    : grid_(cell_coefficients.grid()),
      west_(grid_.size(), 0.0),
      east_(grid_.size(), 0.0),
      south_(grid_.size(), 0.0),
      north_(grid_.size(), 0.0)
{
    const std::size_t nx = grid_.nx();
    const std::size_t ny = grid_.ny();
    const double ihx2 = 1.0 / (grid_.hx() * grid_.hx());
    const double ihy2 = 1.0 / (grid_.hy() * grid_.hy());
    const Field& c = cell_coefficients;
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i + 1 < nx; ++i) {
            const std::size_t k = grid_.index(i, j);
            const double w = 0.5 * (c[k] + c[k + 1]) * ihx2;
            east_[k] = w;
            west_[k + 1] = w;
        }
    }
    if (grid_.dim() == 2) {
        for (std::size_t j = 0; j + 1 < ny; ++j) {
            for (std::size_t i = 0; i < nx; ++i) {
                const std::size_t k = grid_.index(i, j);
                const double w = 0.5 * (c[k] + c[k + nx]) * ihy2;
                north_[k] = w;
                south_[k + nx] = w;
            }
        }
    }
}

kernels::StencilView DiffusionStencil::view() const
{
    return {grid_.nx(), grid_.ny(), west_.data(), east_.data(), south_.data(), north_.data()};
}

std::vector<double> DiffusionStencil::diagonal(double alpha, double beta) const
{
    std::vector<double> diag(grid_.size());
    for (std::size_t k = 0; k < diag.size(); ++k) {
        diag[k] = alpha - beta * (west_[k] + east_[k] + south_[k] + north_[k]);
    }
    return diag;
}

double DiffusionStencil::face_weight(std::size_t k, int dir) const
{
    switch (dir) {
    case 0: return west_.at(k);
    case 1: return east_.at(k);
    case 2: return south_.at(k);
    default: return north_.at(k);
    }
}

void apply_stencil(const DiffusionStencil& st, std::span<const double> u, std::span<double> out,
                   double alpha, double beta)
{
    if (u.size() != st.grid().size() || out.size() != st.grid().size()) {
        throw ContractViolation("apply_stencil: vector length does not match grid");
    }
    kernels::active().stencil_apply(st.view(), u.data(), out.data(), alpha, beta);
}

Field diffuse(const Field& u, const DiffusionStencil& st)
{
    if (!(u.grid() == st.grid())) {
        throw ContractViolation("diffuse: field and coefficients live on different grids");
    }
    Field out(u.grid());
    apply_stencil(st, u.values(), out.values(), 0.0, 1.0);
    return out;
}

Field diffuse(const Field& u, const CoefficientSampler& coeff, double t)
{
    return diffuse(u, DiffusionStencil(coeff.sample(u.grid(), t)));
}

Field convect(const Field& B, std::span<const double> velocity)
{
    const Grid& g = B.grid();
    if (velocity.size() != static_cast<std::size_t>(g.dim())) {
        throw ContractViolation("convect: velocity length must equal the grid dimension");
    }
    Field out(g);
    const std::size_t nx = g.nx();
    const std::size_t ny = g.ny();
    const double vx = velocity[0];
    const double vy = g.dim() == 2 ? velocity[1] : 0.0;
    const double ihx = 1.0 / g.hx();
    const double ihy = 1.0 / g.hy();
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t k = g.index(i, j);
            const double bc = B[k];
            double dbdx = 0.0;
            if (vx > 0.0) {
                dbdx = (bc - (i > 0 ? B[k - 1] : bc)) * ihx;
            } else if (vx < 0.0) {
                dbdx = ((i + 1 < nx ? B[k + 1] : bc) - bc) * ihx;
            }
            double dbdy = 0.0;
            if (vy > 0.0) {
                dbdy = (bc - (j > 0 ? B[k - nx] : bc)) * ihy;
            } else if (vy < 0.0) {
                dbdy = ((j + 1 < ny ? B[k + nx] : bc) - bc) * ihy;
            }
            out[k] = -(vx * dbdx + vy * dbdy);
        }
    }
    return out;
}

double convection_rate(const Grid& grid, std::span<const double> velocity)
{
    double rate = 0.0;
    if (!velocity.empty()) {
        rate += std::fabs(velocity[0]) / grid.hx();
    }
    if (velocity.size() > 1 && grid.dim() == 2) {
        rate += std::fabs(velocity[1]) / grid.hy();
    }
    return rate;
}

double field_reduce(const Field& u, Reduction kind)
{
    const auto& k = kernels::active();
    const double* x = u.data();
    const std::size_t n = u.size();
    switch (kind) {
    case Reduction::l1: return k.sum_abs(x, n) * u.grid().cell_volume();
    case Reduction::l2sq: return k.sum_sq(x, n) * u.grid().cell_volume();
    case Reduction::min: return k.min(x, n);
    case Reduction::max: return k.max(x, n);
    }
    return 0.0;
}

double integrate(const Field& u)
{
    return kernels::active().sum(u.data(), u.size()) * u.grid().cell_volume();
}

}  // namespace epidiff
