#include "epidiff/linear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "epidiff/errors.hpp"

namespace epidiff {

namespace {

SolveReport solve_tridiagonal(const DiffusionStencil& st, double alpha, double beta,
                              std::span<const double> rhs, std::span<double> x)
{
    const std::size_t n = rhs.size();
    std::vector<double> c_prime(n);
    std::vector<double> d_prime(n);
    // row k: lower = beta*w_k, diag = alpha - beta*(w_k + e_k), upper = beta*e_k
    auto lower = [&](std::size_t k) { return beta * st.face_weight(k, 0); };
    auto upper = [&](std::size_t k) { return beta * st.face_weight(k, 1); };
    auto diag = [&](std::size_t k) {
        return alpha - beta * (st.face_weight(k, 0) + st.face_weight(k, 1));
    };
    double denom = diag(0);
    c_prime[0] = upper(0) / denom;
    d_prime[0] = rhs[0] / denom;
    for (std::size_t k = 1; k < n; ++k) {
        denom = diag(k) - lower(k) * c_prime[k - 1];
        c_prime[k] = upper(k) / denom;
        d_prime[k] = (rhs[k] - lower(k) * d_prime[k - 1]) / denom;
    }
    x[n - 1] = d_prime[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) {
        x[k] = d_prime[k] - c_prime[k] * x[k + 1];
    }
    SolveReport report;
    report.method = SolverMethod::tridiagonal;
    report.iterations = 1;
    report.relative_residual = relative_residual(st, alpha, beta, rhs, x);
    report.converged = std::isfinite(report.relative_residual);
    return report;
}

SolveReport solve_cg(const DiffusionStencil& st, double alpha, double beta,
                     std::span<const double> rhs, std::span<double> x, const SolveOptions& opt)
{
    const auto& k = kernels::active();
    const std::size_t n = rhs.size();
    const auto view = st.view();
    const std::size_t max_iter = opt.max_iterations > 0 ? opt.max_iterations : 10 * n;

    std::vector<double> inv_diag = st.diagonal(alpha, beta);
    for (double& v : inv_diag) {
        v = 1.0 / v;
    }
    std::vector<double> r(n);
    std::vector<double> z(n);
    std::vector<double> p(n);
    std::vector<double> q(n);

    // r = rhs - A x
    k.stencil_apply(view, x.data(), r.data(), alpha, beta);
    k.xpby(rhs.data(), -1.0, r.data(), n);

    const double rhs_norm = std::sqrt(k.dot(rhs.data(), rhs.data(), n));
    double r_norm = std::sqrt(k.dot(r.data(), r.data(), n));
    const double reference = opt.reference == ResidualReference::rhs ? rhs_norm : r_norm;

    SolveReport report;
    report.method = SolverMethod::cg;
    if (r_norm == 0.0 || reference == 0.0) {
        report.relative_residual = 0.0;
        return report;
    }
    // below ~1e-14 ||rhs|| the recursive residual no longer tracks the true one
    const double target = std::max(opt.tol * reference, 1e-14 * rhs_norm);

    k.mul(inv_diag.data(), r.data(), z.data(), n);
    p = z;
    double rz = k.dot(r.data(), z.data(), n);
    std::size_t it = 0;
    while (r_norm > target && it < max_iter) {
        k.stencil_apply(view, p.data(), q.data(), alpha, beta);
        const double pq = k.dot(p.data(), q.data(), n);
        if (!(pq > 0.0)) {
            break;
        }
        const double step = rz / pq;
        k.axpy(step, p.data(), x.data(), n);
        k.axpy(-step, q.data(), r.data(), n);
        r_norm = std::sqrt(k.dot(r.data(), r.data(), n));
        ++it;
        if (r_norm <= target) {
            break;
        }
        k.mul(inv_diag.data(), r.data(), z.data(), n);
        const double rz_next = k.dot(r.data(), z.data(), n);
        k.xpby(z.data(), rz_next / rz, p.data(), n);
        rz = rz_next;
    }
    report.iterations = it;
    report.relative_residual = r_norm / reference;
    report.converged = r_norm <= target && std::isfinite(r_norm);
    return report;
}

}  // namespace

SolveReport solve_implicit(const DiffusionStencil& stencil, double alpha, double beta,
                           std::span<const double> rhs, std::span<double> x,
                           const SolveOptions& options)
{
    const Grid& g = stencil.grid();
    if (rhs.size() != g.size() || x.size() != g.size()) {
        throw ContractViolation("solve_implicit: vector length does not match grid");
    }
    if (!(alpha > 0.0) || beta > 0.0) {
        throw ContractViolation("solve_implicit: matrix must be SPD (alpha > 0, beta <= 0)");
    }
    SolverMethod method = options.method;
    if (method == SolverMethod::automatic) {
        method = g.dim() == 1 ? SolverMethod::tridiagonal : SolverMethod::cg;
    }
    if (method == SolverMethod::tridiagonal) {
        if (g.dim() != 1) {
            throw ContractViolation("solve_implicit: tridiagonal path needs a 1D grid");
        }
        return solve_tridiagonal(stencil, alpha, beta, rhs, x);
    }
    return solve_cg(stencil, alpha, beta, rhs, x, options);
}

double relative_residual(const DiffusionStencil& stencil, double alpha, double beta,
                         std::span<const double> rhs, std::span<const double> x)
{
    const auto& k = kernels::active();
    const std::size_t n = rhs.size();
    std::vector<double> r(n);
    k.stencil_apply(stencil.view(), x.data(), r.data(), alpha, beta);
    k.xpby(rhs.data(), -1.0, r.data(), n);
    const double rn = std::sqrt(k.dot(r.data(), r.data(), n));
    const double bn = std::sqrt(k.dot(rhs.data(), rhs.data(), n));
    if (bn == 0.0) {
        return rn;
    }
    return rn / bn;
}

}  // namespace epidiff
