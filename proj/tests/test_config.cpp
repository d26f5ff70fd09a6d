#include <doctest.h>

#include <cmath>
#include <string>

#include "epidiff/config.hpp"
#include "epidiff/errors.hpp"

using namespace epidiff;

namespace {

const std::string kMinimal = R"(
[grid]
dim = 1
cells = 16

[params]
d = 1.5
gamma = 1
sigma = 1
beta1 = 1
beta2 = 1
delta = 0.6
xi = 0.5
g = 0.1
K = 1

[coefficients]
d1 = constant 0.1
d2 = 0.2
d3 = constant 0.1
d4 = constant 0.05
b = constant 1

[initial]
S = 1
I = 0.5
R = 0
B = 0.2
)";

std::string with(const std::string& from, const std::string& to)
{
    std::string s = kMinimal;
    const auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    s.replace(pos, from.size(), to);
    return s;
}

void require_error_mentions(const std::string& text, const std::string& key)
{
    try {
        parse_config(text);
        FAIL("expected ConfigError mentioning " << key);
    } catch (const ConfigError& e) {
        CHECK_MESSAGE(std::string(e.what()).find(key) != std::string::npos, e.what());
    }
}

}  // namespace

TEST_CASE("minimal config gets defaults and round-trips")
{
    const Scenario sc = parse_config(kMinimal);
    CHECK(sc.sim.dt_max == 0.01);
    CHECK(sc.sim.solver_tol == 1e-10);
    CHECK(sc.sim.t_end == 10.0);
    CHECK(sc.verify.seeds == 20);
    CHECK(sc.sim.grid.nx() == 16);
    CHECK(sc.sim.params.velocity.size() == 1);
    const std::string dumped = dump_config(sc);
    const Scenario again = parse_config(dumped);
    CHECK(again.effective == sc.effective);
    CHECK(dump_config(again) == dumped);
}

TEST_CASE("rejections name the key")
{
    require_error_mentions(with("d = 1.5", "d = -1"), "params.d");
    require_error_mentions(with("d1 = constant 0.1", "d1 = constant 0"), "coefficients.d1");
    require_error_mentions(with("R = 0", "R = -0.5"), "initial.R");
    require_error_mentions(with("K = 1", "K = 1\nkappa = 2"), "params.kappa");
    require_error_mentions(with("d2 = 0.2", "d2 = expression 1 + * x\nd2.d0 = 1\nd2.D0 = 2"),
                           "coefficients.d2");
    require_error_mentions(with("[initial]", "[bogus]\nx = 1\n[initial]"), "bogus");
    require_error_mentions(with("g = 0.1", "g = 0.1\ng = 0.2"), "params.g");
    require_error_mentions(with("S = 1", "S = 1 + t"), "initial.S");
}

TEST_CASE("time-dependent diffusion with declared bounds")
{
    const std::string text = with("d1 = constant 0.1", "d1 = expression 2 + sin(t)\nd1.d0 = 1\nd1.D0 = 3");
    const Scenario sc = parse_config(text);
    const auto& d1 = sc.sim.diffusion[0];
    CHECK(d1.time_dependent());
    for (double t : {0.0, 0.3, 1.57, 4.0, 10.0}) {
        const Field f = d1.sample(sc.sim.grid, t);
        CHECK(field_reduce(f, Reduction::min) >= 1.0);
        CHECK(field_reduce(f, Reduction::max) <= 3.0);
        CHECK(f[5] == doctest::Approx(2.0 + std::sin(t)));
    }
    require_error_mentions(with("d1 = constant 0.1", "d1 = expression 2 + sin(t)\nd1.d0 = 1\nd1.D0 = 1.9"),
                           "coefficients.d1");
    require_error_mentions(with("d1 = constant 0.1", "d1 = expression 2 + sin(t)"), "coefficients.d1.d0");
}

TEST_CASE("noise is seeded and stays nonnegative")
{
    const std::string text = with("B = 0.2", "B = 0.2\nnoise = 0.5");
    const Scenario a = parse_config(text, 7);
    const Scenario b = parse_config(text, 7);
    const Scenario c = parse_config(text, 8);
    CHECK(a.sim.initial[0][3] == b.sim.initial[0][3]);
    CHECK(a.sim.initial[0][3] != c.sim.initial[0][3]);
    CHECK(field_reduce(a.sim.initial[3], Reduction::min) >= 0.0);
}

TEST_CASE("sweep section")
{
    const Scenario sc = parse_config(kMinimal + "\n[sweep]\naxes = d 0.8 2.0 13, xi 0.1 0.2 2\nt_end = 5\n");
    REQUIRE(sc.sweep);
    CHECK(sc.sweep->axes.size() == 2);
    CHECK(sc.sweep->axes[0].count == 13);
    CHECK(sc.sweep->threshold == 1e-4);
    CHECK(parse_config(dump_config(sc)).effective == sc.effective);
    require_error_mentions(kMinimal + "\n[sweep]\naxes = omega 0 1 3\n", "sweep.axes");
    require_error_mentions(kMinimal + "\n[sweep]\naxes = d 0 1 1\n", "sweep.axes");
}

TEST_CASE("parameter access by name")
{
    Parameters p;
    set_parameter(p, "beta2", 0.25);
    CHECK(get_parameter(p, "beta2") == 0.25);
    CHECK_THROWS_AS(set_parameter(p, "zeta", 1.0), ConfigError);
}
