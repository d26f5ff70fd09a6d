#include <doctest.h>

#include <cmath>
#include <random>

#include "epidiff/errors.hpp"
#include "epidiff/linear_solver.hpp"
#include "oracles/dense_oracle.hpp"

using namespace epidiff;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

double rel_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        num += (a[k] - b[k]) * (a[k] - b[k]);
        den += b[k] * b[k];
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("identity when beta is zero")
{
    const Grid g(4, 4, 1.0, 1.0);
    const DiffusionStencil st(Field(g, 1.0));
    std::mt19937_64 rng(1);
    const auto rhs = random_vec(g.size(), rng, -1, 1);
    std::vector<double> x(g.size(), 0.0);
    solve_implicit(st, 1.0, 0.0, rhs, x);
    for (std::size_t k = 0; k < x.size(); ++k) {
        CHECK(x[k] == doctest::Approx(rhs[k]).epsilon(1e-12));
    }
}

TEST_CASE("uniform rhs gives the uniform solution")
{
    for (auto g : {Grid(12, 1.0), Grid(6, 5, 1.0, 2.0)}) {
        const DiffusionStencil st(Field::from_function(g, [](double x, double) { return 1 + x; }));
        const std::vector<double> rhs(g.size(), 2.5);
        std::vector<double> x(g.size(), 0.0);
        const auto rep = solve_implicit(st, 1.0, -0.1, rhs, x);
        CHECK(rep.converged);
        for (double v : x) {
            CHECK(v == doctest::Approx(2.5).epsilon(1e-10));
        }
    }
}

TEST_CASE("random SPD instance with 16 cells matches dense elimination")
{
    std::mt19937_64 rng(42);
    const double tol = 1e-10;
    for (int trial = 0; trial < 5; ++trial) {
        for (auto g : {Grid(4, 4, 1.0, 1.0), Grid(16, 1.0)}) {
            const auto c = random_vec(g.size(), rng, 0.2, 3.0);
            const auto rhs = random_vec(g.size(), rng, -1.0, 2.0);
            const double dt = 0.05 * (trial + 1);
            const DiffusionStencil st(Field(g, c));
            const auto dense = oracle::assemble(g.nx(), g.ny(), g.hx(), g.dim() == 2 ? g.hy() : 1.0,
                                                c, 1.0, -dt);
            const auto expect = oracle::gauss_solve(dense, rhs);
            for (auto method : {SolverMethod::cg, SolverMethod::automatic}) {
                std::vector<double> x(g.size(), 0.0);
                SolveOptions opt;
                opt.tol = tol;
                opt.method = method;
                const auto rep = solve_implicit(st, 1.0, -dt, rhs, x, opt);
                CHECK(rep.converged);
                CHECK(rel_diff(x, expect) <= 10 * tol);
                CHECK(relative_residual(st, 1.0, -dt, rhs, x) <= tol);
            }
        }
    }
}

TEST_CASE("tridiagonal solve is 1D only and exact to rounding")
{
    std::mt19937_64 rng(3);
    const Grid g(32, 2.0);
    const auto c = random_vec(g.size(), rng, 0.5, 1.5);
    const auto rhs = random_vec(g.size(), rng, 0.0, 1.0);
    const DiffusionStencil st(Field(g, c));
    std::vector<double> x(g.size(), 0.0);
    SolveOptions opt;
    opt.method = SolverMethod::tridiagonal;
    const auto rep = solve_implicit(st, 2.0, -1.0, rhs, x, opt);
    CHECK(rep.method == SolverMethod::tridiagonal);
    CHECK(relative_residual(st, 2.0, -1.0, rhs, x) < 1e-13);

    const Grid g2(4, 4, 1.0, 1.0);
    const DiffusionStencil st2(Field(g2, 1.0));
    std::vector<double> y(16, 0.0);
    const std::vector<double> r2(16, 1.0);
    CHECK_THROWS_AS(solve_implicit(st2, 1.0, -1.0, r2, y, opt), ContractViolation);
}

TEST_CASE("iteration cap reports non-convergence")
{
    const Grid g(16, 16, 1.0, 1.0);
    const DiffusionStencil st(Field(g, 1.0));
    std::mt19937_64 rng(9);
    const auto rhs = random_vec(g.size(), rng, -1, 1);
    std::vector<double> x(g.size(), 0.0);
    SolveOptions opt;
    opt.max_iterations = 2;
    opt.tol = 1e-14;
    const auto rep = solve_implicit(st, 1.0, -1.0, rhs, x, opt);
    CHECK_FALSE(rep.converged);
    CHECK(rep.relative_residual > 1e-14);
}

TEST_CASE("M-matrix keeps nonnegative data nonnegative")
{
    std::mt19937_64 rng(8);
    const Grid g(24, 24, 1.0, 1.0);
    const auto c = random_vec(g.size(), rng, 0.01, 1.0);
    auto rhs = random_vec(g.size(), rng, 0.0, 1.0);
    for (std::size_t k = 0; k < rhs.size(); k += 3) rhs[k] = 0.0;
    const DiffusionStencil st(Field(g, c));
    std::vector<double> x = rhs;
    SolveOptions opt;
    opt.reference = ResidualReference::initial_residual;
    solve_implicit(st, 1.0, -0.01, rhs, x, opt);
    for (double v : x) {
        CHECK(v >= -1e-12);
    }
}
