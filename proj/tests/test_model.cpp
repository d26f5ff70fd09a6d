#include <doctest.h>

#include <algorithm>
#include <string>

#include "epidiff/errors.hpp"
#include "epidiff/model.hpp"

using namespace epidiff;

namespace {

Parameters unit_rates()
{
    Parameters p;
    p.d = p.gamma = p.sigma = p.delta = p.xi = p.g = p.K = p.beta1 = p.beta2 = 1.0;
    return p;
}

}  // namespace

TEST_CASE("incidence")
{
    CHECK(incidence(0.0, 5.0) == 0.0);
    CHECK(incidence(2.5, 2.5) == 0.5);
    CHECK(incidence(3.0, 1.0) == 0.75);
    CHECK(incidence(1e12, 1.0) < 1.0);
    CHECK_THROWS_AS(incidence(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(incidence(1.0, 0.0), DomainError);
}

TEST_CASE("reaction values")
{
    Parameters p = unit_rates();
    auto f = reaction(0, 0, 0, 0, 2.0, p);
    CHECK(f.f1 == 2.0);
    CHECK(f.f2 == 0.0);
    CHECK(f.f3 == 0.0);
    CHECK(f.f4 == 0.0);

    f = reaction(1, 0, 0, 0, 0.0, p);
    CHECK(f.f1 == -1.0);
    CHECK(f.f2 == 0.0);

    p.K = 2.0;
    f = reaction(1, 1, 1, 2, 0.0, p);
    CHECK(f.f1 == doctest::Approx(-1.5));
    CHECK(f.f2 == doctest::Approx(-0.5));
    CHECK(f.f3 == doctest::Approx(-1.0));
    CHECK(f.f4 == doctest::Approx(-1.0));

    CHECK_THROWS_AS(reaction(-1, 0, 0, 0, 0, p), DomainError);
    CHECK_THROWS_AS(reaction(0, 0, 0, 0, -1, p), DomainError);
}

TEST_CASE("host mass balance of the reaction")
{
    Parameters p = unit_rates();
    p.beta1 = 0.7;
    p.beta2 = 1.3;
    p.gamma = 0.4;
    const auto f = reaction(0.9, 0.4, 0.3, 1.7, 1.2, p);
    CHECK(f.f1 + f.f2 + f.f3 == doctest::Approx(1.2 - p.d * (0.9 + 0.4 + 0.3)));
}

TEST_CASE("production-destruction split reproduces f")
{
    Parameters p = unit_rates();
    p.g = 0.3;
    p.K = 1.5;
    for (auto growth : {GrowthLaw::logistic, GrowthLaw::saturating}) {
        p.growth = growth;
        const double z[4] = {0.8, 0.6, 0.2, 2.1};
        const auto f = reaction(z[0], z[1], z[2], z[3], 0.9, p);
        const auto pd = split_reaction(z[0], z[1], z[2], z[3], 0.9, p);
        const double fs[4] = {f.f1, f.f2, f.f3, f.f4};
        for (int k = 0; k < 4; ++k) {
            CHECK(pd.production[k] >= 0.0);
            CHECK(pd.destruction[k] >= 0.0);
            CHECK(pd.production[k] - pd.destruction[k] * z[k] == doctest::Approx(fs[k]));
        }
        CHECK(max_destruction_rate(z[0], z[1], z[2], z[3], p) >=
              *std::max_element(pd.destruction.begin(), pd.destruction.end()));
    }
}

TEST_CASE("g0 and the attractor condition")
{
    Parameters p = unit_rates();
    CHECK(g_zero(p) == 1.0);
    p.sigma = 0.2;
    p.beta1 = 0.3;
    p.beta2 = 0.1;
    p.gamma = 0.4;
    CHECK(g_zero(p) == doctest::Approx(0.25));
    p.d = 0.5;
    auto c = attractor_condition(p);
    CHECK(c.holds);
    CHECK(c.margin == doctest::Approx(0.25));

    p = unit_rates();
    p.d = 2.0;
    c = attractor_condition(p);
    CHECK(c.holds);
    CHECK(c.margin == 1.0);
    p.d = 1.0;
    c = attractor_condition(p);
    CHECK_FALSE(c.holds);
    CHECK(c.margin == 0.0);
}

TEST_CASE("parameter validation names the field")
{
    Parameters p = unit_rates();
    p.d = -1.0;
    try {
        p.validate();
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("params.d") != std::string::npos);
    }
    p = unit_rates();
    p.g = 0.0;
    CHECK_NOTHROW(p.validate());
    p.K = 0.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
}
