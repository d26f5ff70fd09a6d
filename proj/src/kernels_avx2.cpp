// Compiled with -mavx2 (and without -mfma, so no contraction changes rounding
// relative to the scalar reference).

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "epidiff/kernels.hpp"

namespace epidiff::kernels {

namespace {

inline double hsum(__m256d v)
{
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmin(__m256d v)
{
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    return std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
}

inline double hmax(__m256d v)
{
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    return std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
}

inline double stencil_cell(const StencilView& st, const double* u, std::size_t i, std::size_t j,
                           double alpha, double beta)
{
    const std::size_t nx = st.nx;
    const std::size_t k = j * nx + i;
    const double uc = u[k];
    const double uw = i > 0 ? u[k - 1] : uc;
    const double ue = i + 1 < nx ? u[k + 1] : uc;
    const double us = j > 0 ? u[k - nx] : uc;
    const double un = j + 1 < st.ny ? u[k + nx] : uc;
    double acc = st.west[k] * (uw - uc) + st.east[k] * (ue - uc);
    acc = acc + st.south[k] * (us - uc);
    acc = acc + st.north[k] * (un - uc);
    return alpha * uc + beta * acc;
}

void stencil_apply(const StencilView& st, const double* u, double* out, double alpha, double beta)
{
    const std::size_t nx = st.nx;
    const std::size_t ny = st.ny;
    const __m256d va = _mm256_set1_pd(alpha);
    const __m256d vb = _mm256_set1_pd(beta);
    for (std::size_t j = 0; j < ny; ++j) {
        const std::size_t row = j * nx;
        // rows on the y boundary read their own values through the mirror ghost
        const double* us_row = j > 0 ? u + row - nx : u + row;
        const double* un_row = j + 1 < ny ? u + row + nx : u + row;
        out[row] = stencil_cell(st, u, 0, j, alpha, beta);
        std::size_t i = 1;
        for (; i + 4 < nx; i += 4) {
            const std::size_t k = row + i;
            const __m256d uc = _mm256_loadu_pd(u + k);
            const __m256d uw = _mm256_loadu_pd(u + k - 1);
            const __m256d ue = _mm256_loadu_pd(u + k + 1);
            const __m256d us = _mm256_loadu_pd(us_row + i);
            const __m256d un = _mm256_loadu_pd(un_row + i);
            __m256d acc = _mm256_add_pd(
                _mm256_mul_pd(_mm256_loadu_pd(st.west + k), _mm256_sub_pd(uw, uc)),
                _mm256_mul_pd(_mm256_loadu_pd(st.east + k), _mm256_sub_pd(ue, uc)));
            acc = _mm256_add_pd(acc,
                                _mm256_mul_pd(_mm256_loadu_pd(st.south + k), _mm256_sub_pd(us, uc)));
            acc = _mm256_add_pd(acc,
                                _mm256_mul_pd(_mm256_loadu_pd(st.north + k), _mm256_sub_pd(un, uc)));
            _mm256_storeu_pd(out + k, _mm256_add_pd(_mm256_mul_pd(va, uc), _mm256_mul_pd(vb, acc)));
        }
        for (; i < nx; ++i) {
            out[row + i] = stencil_cell(st, u, i, j, alpha, beta);
        }
    }
}

double dot(const double* a, const double* b, std::size_t n)
{
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k)));
        acc1 = _mm256_add_pd(acc1,
                             _mm256_mul_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4)));
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; k < n; ++k) {
        s += a[k] * b[k];
    }
    return s;
}

void axpy(double a, const double* x, double* y, std::size_t n)
{
    const __m256d va = _mm256_set1_pd(a);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        _mm256_storeu_pd(y + k, _mm256_add_pd(_mm256_loadu_pd(y + k),
                                              _mm256_mul_pd(va, _mm256_loadu_pd(x + k))));
    }
    for (; k < n; ++k) {
        y[k] = y[k] + a * x[k];
    }
}

void xpby(const double* x, double b, double* y, std::size_t n)
{
    const __m256d vb = _mm256_set1_pd(b);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        _mm256_storeu_pd(y + k, _mm256_add_pd(_mm256_loadu_pd(x + k),
                                              _mm256_mul_pd(vb, _mm256_loadu_pd(y + k))));
    }
    for (; k < n; ++k) {
        y[k] = x[k] + b * y[k];
    }
}

void mul(const double* x, const double* y, double* z, std::size_t n)
{
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        _mm256_storeu_pd(z + k, _mm256_mul_pd(_mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k)));
    }
    for (; k < n; ++k) {
        z[k] = x[k] * y[k];
    }
}

double sum(const double* x, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + k));
    }
    double s = hsum(acc);
    for (; k < n; ++k) {
        s += x[k];
    }
    return s;
}

double sum_abs(const double* x, std::size_t n)
{
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + k)));
    }
    double s = hsum(acc);
    for (; k < n; ++k) {
        s += std::fabs(x[k]);
    }
    return s;
}

double sum_sq(const double* x, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d v = _mm256_loadu_pd(x + k);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    double s = hsum(acc);
    for (; k < n; ++k) {
        s += x[k] * x[k];
    }
    return s;
}

double min(const double* x, std::size_t n)
{
    __m256d acc = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        acc = _mm256_min_pd(acc, _mm256_loadu_pd(x + k));
    }
    double m = hmin(acc);
    for (; k < n; ++k) {
        m = x[k] < m ? x[k] : m;
    }
    return m;
}

double max(const double* x, std::size_t n)
{
    __m256d acc = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        acc = _mm256_max_pd(acc, _mm256_loadu_pd(x + k));
    }
    double m = hmax(acc);
    for (; k < n; ++k) {
        m = x[k] > m ? x[k] : m;
    }
    return m;
}

void reaction_update(const ReactionArgs& a)
{
    const ReactionRates& p = a.rates;
    const double dg = p.d + p.gamma;
    const double ds = p.d + p.sigma;
    const __m256d vK = _mm256_set1_pd(p.K);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d b1 = _mm256_set1_pd(p.beta1);
    const __m256d b2 = _mm256_set1_pd(p.beta2);
    const __m256d vg = _mm256_set1_pd(p.g);
    const __m256d vd = _mm256_set1_pd(p.d);
    const __m256d vsig = _mm256_set1_pd(p.sigma);
    const __m256d vgam = _mm256_set1_pd(p.gamma);
    const __m256d vdg = _mm256_set1_pd(dg);
    const __m256d vds = _mm256_set1_pd(ds);
    const __m256d vxi = _mm256_set1_pd(p.xi);
    const __m256d vdel = _mm256_set1_pd(p.delta);
    const __m256d vdt = _mm256_set1_pd(a.dt);
    std::size_t k = 0;
    for (; k + 4 <= a.n; k += 4) {
        const __m256d S = _mm256_loadu_pd(a.s + k);
        const __m256d I = _mm256_loadu_pd(a.i + k);
        const __m256d R = _mm256_loadu_pd(a.r + k);
        const __m256d B = _mm256_loadu_pd(a.b + k);
        const __m256d h = _mm256_div_pd(B, _mm256_add_pd(B, vK));
        const __m256d infection = _mm256_add_pd(_mm256_mul_pd(_mm256_mul_pd(b1, S), I),
                                                _mm256_mul_pd(_mm256_mul_pd(b2, S), h));
        const __m256d tail = p.logistic ? _mm256_sub_pd(one, _mm256_div_pd(B, vK))
                                        : _mm256_sub_pd(one, h);
        const __m256d growth = _mm256_mul_pd(_mm256_mul_pd(vg, B), tail);
        __m256d f1 = _mm256_sub_pd(_mm256_loadu_pd(a.influx + k), infection);
        f1 = _mm256_sub_pd(f1, _mm256_mul_pd(vd, S));
        f1 = _mm256_add_pd(f1, _mm256_mul_pd(vsig, R));
        const __m256d f2 = _mm256_sub_pd(infection, _mm256_mul_pd(vdg, I));
        const __m256d f3 = _mm256_sub_pd(_mm256_mul_pd(vgam, I), _mm256_mul_pd(vds, R));
        const __m256d f4 = _mm256_sub_pd(_mm256_add_pd(_mm256_mul_pd(vxi, I), growth),
                                         _mm256_mul_pd(vdel, B));
        _mm256_storeu_pd(a.out_s + k, _mm256_add_pd(S, _mm256_mul_pd(vdt, f1)));
        _mm256_storeu_pd(a.out_i + k, _mm256_add_pd(I, _mm256_mul_pd(vdt, f2)));
        _mm256_storeu_pd(a.out_r + k, _mm256_add_pd(R, _mm256_mul_pd(vdt, f3)));
        _mm256_storeu_pd(a.out_b + k, _mm256_add_pd(B, _mm256_mul_pd(vdt, f4)));
    }
    if (k < a.n) {
        ReactionArgs rest = a;
        rest.n = a.n - k;
        rest.s += k;
        rest.i += k;
        rest.r += k;
        rest.b += k;
        rest.influx += k;
        rest.out_s += k;
        rest.out_i += k;
        rest.out_r += k;
        rest.out_b += k;
        scalar().reaction_update(rest);
    }
}

double max_destruction(const ReactionArgs& a)
{
    const ReactionRates& p = a.rates;
    const double gk = p.logistic ? p.g / p.K : 0.0;
    const __m256d vK = _mm256_set1_pd(p.K);
    const __m256d b1 = _mm256_set1_pd(p.beta1);
    const __m256d b2 = _mm256_set1_pd(p.beta2);
    const __m256d vd = _mm256_set1_pd(p.d);
    const __m256d vdel = _mm256_set1_pd(p.delta);
    const __m256d vgk = _mm256_set1_pd(gk);
    const __m256d vextra = _mm256_set1_pd(p.extra_b_destruction);
    __m256d acc = _mm256_set1_pd(std::max(p.d + p.gamma, p.d + p.sigma));
    std::size_t k = 0;
    for (; k + 4 <= a.n; k += 4) {
        const __m256d I = _mm256_loadu_pd(a.i + k);
        const __m256d B = _mm256_loadu_pd(a.b + k);
        const __m256d h = _mm256_div_pd(B, _mm256_add_pd(B, vK));
        const __m256d d1 = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(b1, I), _mm256_mul_pd(b2, h)), vd);
        const __m256d d4 = _mm256_add_pd(_mm256_add_pd(vdel, _mm256_mul_pd(vgk, B)), vextra);
        acc = _mm256_max_pd(acc, _mm256_max_pd(d1, d4));
    }
    double m = hmax(acc);
    if (k < a.n) {
        ReactionArgs rest = a;
        rest.n = a.n - k;
        rest.i += k;
        rest.b += k;
        m = std::max(m, scalar().max_destruction(rest));
    }
    return m;
}

}  // namespace

const KernelTable* avx2_table()
{
    static const KernelTable table{
        "avx2", stencil_apply, dot, axpy, xpby, mul, sum, sum_abs, sum_sq, min, max,
        reaction_update, max_destruction,
    };
    return &table;
}

}  // namespace epidiff::kernels
