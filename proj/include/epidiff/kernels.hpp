#pragma once

// Data-parallel inner loops. A scalar reference implementation is always
// available; an AVX2 variant is compiled on x86-64 and picked at runtime.
//
// Elementwise kernels (stencil_apply, axpy, xpby, mul, reaction_update,
// max_destruction) perform the same IEEE operations in the same order in
// every variant, so their results are bitwise identical across variants.
// Reductions (dot, sum*, min, max) use lane-parallel accumulation in the
// SIMD variants; sums agree with the scalar path to rounding only.

#include <cstddef>
#include <string_view>

namespace epidiff::kernels {

/// Five-point stencil on an nx x ny cell grid (ny == 1 in 1D). Each cell
/// stores the weight of its four faces; boundary faces carry weight 0 and a
/// missing neighbor reads the cell itself (mirror ghost), which makes the
/// boundary flux exactly zero.
struct StencilView {
    std::size_t nx = 0;
    std::size_t ny = 1;
    const double* west = nullptr;
    const double* east = nullptr;
    const double* south = nullptr;
    const double* north = nullptr;
};

struct ReactionRates {
    double d = 0.0;
    double gamma = 0.0;
    double sigma = 0.0;
    double delta = 0.0;
    double xi = 0.0;
    double g = 0.0;
    double K = 1.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    bool logistic = true;
    /// Added to the bacteria destruction rate (upwind convection outflow).
    double extra_b_destruction = 0.0;
};

struct ReactionArgs {
    std::size_t n = 0;
    const double* s = nullptr;
    const double* i = nullptr;
    const double* r = nullptr;
    const double* b = nullptr;
    const double* influx = nullptr;
    double* out_s = nullptr;
    double* out_i = nullptr;
    double* out_r = nullptr;
    double* out_b = nullptr;
    double dt = 0.0;
    ReactionRates rates;
};

struct KernelTable {
    std::string_view name;
    /// out = alpha * u + beta * (L u)
    void (*stencil_apply)(const StencilView& st, const double* u, double* out, double alpha,
                          double beta);
    double (*dot)(const double* a, const double* b, std::size_t n);
    /// y += a * x
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    /// y = x + b * y
    void (*xpby)(const double* x, double b, double* y, std::size_t n);
    /// z = x * y
    void (*mul)(const double* x, const double* y, double* z, std::size_t n);
    double (*sum)(const double* x, std::size_t n);
    double (*sum_abs)(const double* x, std::size_t n);
    double (*sum_sq)(const double* x, std::size_t n);
    double (*min)(const double* x, std::size_t n);
    double (*max)(const double* x, std::size_t n);
    /// out = u + dt * f(u), the explicit reaction update for all four species.
    void (*reaction_update)(const ReactionArgs& args);
    /// Largest destruction rate over species and cells (out pointers unused).
    double (*max_destruction)(const ReactionArgs& args);
};

const KernelTable& scalar();
/// nullptr when not compiled in or the CPU lacks AVX2.
const KernelTable* avx2();
/// AVX2 when available unless EPIDIFF_KERNELS=scalar is set in the environment.
const KernelTable& active();

}  // namespace epidiff::kernels
