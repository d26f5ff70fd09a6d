#include "epidiff/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epidiff/errors.hpp"

namespace epidiff {

namespace {

void check_axis(std::size_t n, double length, const char* axis)
{
    if (n < 3) {
        throw ContractViolation(std::string("grid: need at least 3 cells along ") + axis);
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw ContractViolation(std::string("grid: extent along ") + axis + " must be positive");
    }
}

}  // namespace

Grid::Grid(std::size_t nx, double length) : dim_(1), nx_(nx), ny_(1), lx_(length), ly_(1.0)
{
    check_axis(nx, length, "x");
}

Grid::Grid(std::size_t nx, std::size_t ny, double lx, double ly)
    : dim_(2), nx_(nx), ny_(ny), lx_(lx), ly_(ly)
{
    check_axis(nx, lx, "x");
    check_axis(ny, ly, "y");
}

Field::Field(const Grid& grid, double value) : grid_(grid), values_(grid.size(), value) {}

Field::Field(const Grid& grid, std::vector<double> values) : grid_(grid), values_(std::move(values))
{
    if (values_.size() != grid_.size()) {
        throw ContractViolation("field: value count does not match grid");
    }
}

Field Field::from_function(const Grid& grid, const std::function<double(double, double)>& fn)
{
    Field f(grid);
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            f[grid.index(i, j)] = fn(grid.x_center(i), grid.y_center(j));
        }
    }
    return f;
}

bool Field::all_finite() const
{
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void require_same_grid(const Field& a, const Field& b, std::string_view what)
{
    if (!(a.grid() == b.grid())) {
        throw ContractViolation(std::string(what) + ": fields live on different grids");
    }
}

State make_state(const Grid& grid, double s, double i, double r, double b)
{
    return {Field(grid, s), Field(grid, i), Field(grid, r), Field(grid, b)};
}

}  // namespace epidiff
