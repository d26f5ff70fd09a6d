#include <algorithm>
#include <cmath>
#include <limits>

#include "epidiff/kernels.hpp"

namespace epidiff::kernels {

namespace {

void stencil_apply(const StencilView& st, const double* u, double* out, double alpha, double beta)
{
    const std::size_t nx = st.nx;
    const std::size_t ny = st.ny;
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t k = j * nx + i;
            const double uc = u[k];
            const double uw = i > 0 ? u[k - 1] : uc;
            const double ue = i + 1 < nx ? u[k + 1] : uc;
            const double us = j > 0 ? u[k - nx] : uc;
            const double un = j + 1 < ny ? u[k + nx] : uc;
            double acc = st.west[k] * (uw - uc) + st.east[k] * (ue - uc);
            acc = acc + st.south[k] * (us - uc);
            acc = acc + st.north[k] * (un - uc);
            out[k] = alpha * uc + beta * acc;
        }
    }
}

double dot(const double* a, const double* b, std::size_t n)
{
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        s += a[k] * b[k];
    }
    return s;
}

void axpy(double a, const double* x, double* y, std::size_t n)
{
    for (std::size_t k = 0; k < n; ++k) {
        y[k] = y[k] + a * x[k];
    }
}

void xpby(const double* x, double b, double* y, std::size_t n)
{
    for (std::size_t k = 0; k < n; ++k) {
        y[k] = x[k] + b * y[k];
    }
}

void mul(const double* x, const double* y, double* z, std::size_t n)
{
    for (std::size_t k = 0; k < n; ++k) {
        z[k] = x[k] * y[k];
    }
}

double sum(const double* x, std::size_t n)
{
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        s += x[k];
    }
    return s;
}

double sum_abs(const double* x, std::size_t n)
{
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        s += std::fabs(x[k]);
    }
    return s;
}

double sum_sq(const double* x, std::size_t n)
{
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        s += x[k] * x[k];
    }
    return s;
}

double min(const double* x, std::size_t n)
{
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        m = x[k] < m ? x[k] : m;
    }
    return m;
}

double max(const double* x, std::size_t n)
{
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        m = x[k] > m ? x[k] : m;
    }
    return m;
}

void reaction_update(const ReactionArgs& a)
{
    const ReactionRates& p = a.rates;
    const double dg = p.d + p.gamma;
    const double ds = p.d + p.sigma;
    for (std::size_t k = 0; k < a.n; ++k) {
        const double S = a.s[k];
        const double I = a.i[k];
        const double R = a.r[k];
        const double B = a.b[k];
        const double h = B / (B + p.K);
        const double infection = p.beta1 * S * I + p.beta2 * S * h;
        const double growth = p.logistic ? p.g * B * (1.0 - B / p.K) : p.g * B * (1.0 - h);
        const double f1 = a.influx[k] - infection - p.d * S + p.sigma * R;
        const double f2 = infection - dg * I;
        const double f3 = p.gamma * I - ds * R;
        const double f4 = p.xi * I + growth - p.delta * B;
        a.out_s[k] = S + a.dt * f1;
        a.out_i[k] = I + a.dt * f2;
        a.out_r[k] = R + a.dt * f3;
        a.out_b[k] = B + a.dt * f4;
    }
}

double max_destruction(const ReactionArgs& a)
{
    const ReactionRates& p = a.rates;
    const double gk = p.logistic ? p.g / p.K : 0.0;
    double m = std::max(p.d + p.gamma, p.d + p.sigma);
    for (std::size_t k = 0; k < a.n; ++k) {
        const double I = a.i[k];
        const double B = a.b[k];
        const double h = B / (B + p.K);
        const double d1 = p.beta1 * I + p.beta2 * h + p.d;
        const double d4 = p.delta + gk * B + p.extra_b_destruction;
        m = d1 > m ? d1 : m;
        m = d4 > m ? d4 : m;
    }
    return m;
}

}  // namespace

const KernelTable& scalar()
{
    static const KernelTable table{
        "scalar", stencil_apply, dot, axpy, xpby, mul, sum, sum_abs, sum_sq, min, max,
        reaction_update, max_destruction,
    };
    return table;
}

}  // namespace epidiff::kernels
