#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace epidiff {

/// Axis-aligned box [0, Lx] x [0, Ly] split into uniform cells.
/// A 1D grid is stored as nx x 1 with a unit y extent.
class Grid {
public:
    Grid() = default;
    /// 1D grid of `nx` cells over [0, length].
    Grid(std::size_t nx, double length);
    /// 2D grid of nx x ny cells over [0, lx] x [0, ly].
    Grid(std::size_t nx, std::size_t ny, double lx, double ly);

    int dim() const { return dim_; }
    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    std::size_t size() const { return nx_ * ny_; }
    double lx() const { return lx_; }
    double ly() const { return ly_; }
    double hx() const { return lx_ / static_cast<double>(nx_); }
    double hy() const { return dim_ == 2 ? ly_ / static_cast<double>(ny_) : 1.0; }
    double cell_volume() const { return hx() * hy(); }
    /// |Omega|, length in 1D and area in 2D.
    double volume() const { return dim_ == 2 ? lx_ * ly_ : lx_; }

    std::size_t index(std::size_t i, std::size_t j) const { return j * nx_ + i; }
    double x_center(std::size_t i) const { return (static_cast<double>(i) + 0.5) * hx(); }
    double y_center(std::size_t j) const
    {
        return dim_ == 2 ? (static_cast<double>(j) + 0.5) * hy() : 0.0;
    }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int dim_ = 1;
    std::size_t nx_ = 3;
    std::size_t ny_ = 1;
    double lx_ = 1.0;
    double ly_ = 1.0;
};

/// One scalar per cell center, row-major with x fastest.
class Field {
public:
    Field() = default;
    explicit Field(const Grid& grid, double value = 0.0);
    Field(const Grid& grid, std::vector<double> values);

    /// Samples fn(x, y) at cell centers (y = 0 in 1D).
    static Field from_function(const Grid& grid, const std::function<double(double, double)>& fn);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    double& operator[](std::size_t k) { return values_[k]; }
    double operator[](std::size_t k) const { return values_[k]; }
    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }

    bool all_finite() const;

private:
    Grid grid_;
    std::vector<double> values_;
};

void require_same_grid(const Field& a, const Field& b, std::string_view what);

inline constexpr std::array<std::string_view, 4> kSpeciesNames{"S", "I", "R", "B"};

/// Z = (S, I, R, B) at one time level.
using State = std::array<Field, 4>;

State make_state(const Grid& grid, double s, double i, double r, double b);

}  // namespace epidiff
