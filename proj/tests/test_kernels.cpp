#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#include "epidiff/kernels.hpp"

using namespace epidiff::kernels;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0)
{
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b)
{
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (std::memcmp(&a[k], &b[k], sizeof(double)) != 0) return false;
    }
    return a.size() == b.size();
}

}  // namespace

TEST_CASE("scalar table is always present")
{
    CHECK(scalar().name == "scalar");
    CHECK(active().stencil_apply != nullptr);
}

TEST_CASE("SIMD kernels agree with the scalar reference")
{
    const KernelTable* simd = avx2();
    if (!simd) {
        MESSAGE("no AVX2 on this host; equivalence not exercised");
        return;
    }
    const KernelTable& ref = scalar();
    std::mt19937_64 rng(11);
    for (std::size_t nx : {3u, 4u, 5u, 7u, 8u, 9u, 17u, 64u}) {
        for (std::size_t ny : {1u, 3u, 6u}) {
            const std::size_t n = nx * ny;
            auto w = random_vec(n, rng, 0.0, 2.0), e = random_vec(n, rng, 0.0, 2.0);
            auto s = random_vec(n, rng, 0.0, 2.0), no = random_vec(n, rng, 0.0, 2.0);
            for (std::size_t j = 0; j < ny; ++j) {
                w[j * nx] = 0.0;
                e[j * nx + nx - 1] = 0.0;
            }
            for (std::size_t i = 0; i < nx; ++i) {
                s[i] = 0.0;
                no[(ny - 1) * nx + i] = 0.0;
            }
            const StencilView st{nx, ny, w.data(), e.data(), s.data(), no.data()};
            const auto u = random_vec(n, rng);
            std::vector<double> a(n), b(n);
            ref.stencil_apply(st, u.data(), a.data(), 1.3, -0.7);
            simd->stencil_apply(st, u.data(), b.data(), 1.3, -0.7);
            CHECK(same_bits(a, b));

            const auto x = random_vec(n, rng);
            auto y1 = random_vec(n, rng);
            auto y2 = y1;
            ref.axpy(0.37, x.data(), y1.data(), n);
            simd->axpy(0.37, x.data(), y2.data(), n);
            CHECK(same_bits(y1, y2));
            ref.xpby(x.data(), -1.1, y1.data(), n);
            simd->xpby(x.data(), -1.1, y2.data(), n);
            CHECK(same_bits(y1, y2));
            ref.mul(x.data(), u.data(), y1.data(), n);
            simd->mul(x.data(), u.data(), y2.data(), n);
            CHECK(same_bits(y1, y2));

            CHECK(simd->dot(x.data(), u.data(), n) == doctest::Approx(ref.dot(x.data(), u.data(), n)).epsilon(1e-13));
            CHECK(simd->sum(x.data(), n) == doctest::Approx(ref.sum(x.data(), n)).epsilon(1e-13));
            CHECK(simd->sum_abs(x.data(), n) == doctest::Approx(ref.sum_abs(x.data(), n)).epsilon(1e-13));
            CHECK(simd->sum_sq(x.data(), n) == doctest::Approx(ref.sum_sq(x.data(), n)).epsilon(1e-13));
            CHECK(simd->min(x.data(), n) == ref.min(x.data(), n));
            CHECK(simd->max(x.data(), n) == ref.max(x.data(), n));

            for (bool logistic : {true, false}) {
                ReactionArgs args;
                args.n = n;
                const auto S = random_vec(n, rng, 0.0, 2.0), I = random_vec(n, rng, 0.0, 2.0);
                const auto R = random_vec(n, rng, 0.0, 2.0), B = random_vec(n, rng, 0.0, 2.0);
                const auto bin = random_vec(n, rng, 0.0, 1.0);
                args.s = S.data();
                args.i = I.data();
                args.r = R.data();
                args.b = B.data();
                args.influx = bin.data();
                args.dt = 0.013;
                args.rates = {0.9, 0.4, 0.3, 0.7, 0.5, 0.2, 1.3, 0.8, 1.1, logistic, 0.25};
                std::vector<std::vector<double>> o1(4, std::vector<double>(n)), o2 = o1;
                args.out_s = o1[0].data();
                args.out_i = o1[1].data();
                args.out_r = o1[2].data();
                args.out_b = o1[3].data();
                ref.reaction_update(args);
                const double d1 = ref.max_destruction(args);
                args.out_s = o2[0].data();
                args.out_i = o2[1].data();
                args.out_r = o2[2].data();
                args.out_b = o2[3].data();
                simd->reaction_update(args);
                const double d2 = simd->max_destruction(args);
                for (int k = 0; k < 4; ++k) {
                    CHECK(same_bits(o1[k], o2[k]));
                }
                CHECK(d1 == d2);
            }
        }
    }
}
