#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "epidiff/diagnostics.hpp"
#include "epidiff/errors.hpp"

using namespace epidiff;

TEST_CASE("energy variants")
{
    const Grid g(10, 1.0);
    const State z = make_state(g, 1, 0, 0, 0);
    CHECK(energy_Y(z, EnergyVariant::proof) == doctest::Approx(0.5));
    CHECK(energy_Y(z, EnergyVariant::statement) == doctest::Approx(1.0));
    const State zero = make_state(g, 0, 0, 0, 0);
    CHECK(energy_Y(zero, EnergyVariant::proof) == 0.0);
    CHECK(energy_Y(zero, EnergyVariant::statement) == 0.0);

    const State w = make_state(g, 0.3, 1.2, 0.7, 2.0);
    State half = w;
    for (auto& f : half) {
        for (std::size_t k = 0; k < f.size(); ++k) f[k] *= 0.5;
    }
    CHECK(energy_Y(half, EnergyVariant::proof) <= energy_Y(w, EnergyVariant::proof));
    CHECK(energy_Y(half, EnergyVariant::statement) == doctest::Approx(0.25 * energy_Y(w, EnergyVariant::statement)));
}

TEST_CASE("decay envelope")
{
    Parameters p;
    p.d = 2.0;
    p.sigma = p.beta1 = p.beta2 = p.gamma = 1.0;
    CHECK(decay_envelope(0.0, 3.0, p, 2.0, 0.5) == doctest::Approx(2.0 + 2.0));
    CHECK(decay_envelope(1e4, 3.0, p, 2.0, 0.5) == doctest::Approx(2.0));
    CHECK(decay_envelope(7.0, 1.0, p, 2.0, 0.5) == doctest::Approx(2.0));
    p.d = 1.0;
    CHECK_THROWS_AS(decay_envelope(0.0, 3.0, p, 2.0, 0.5), DomainError);
}

TEST_CASE("attractor distance")
{
    const Grid g(8, 1.0);
    const State target = make_state(g, 0.7, 0, 0, 0);
    auto d = attractor_distance(target, target);
    CHECK(d.J == 0.0);
    for (double c : d.components) CHECK(c == 0.0);

    State z = target;
    z[1] = Field(g, 1.0);
    d = attractor_distance(z, target);
    CHECK(d.components[1] == doctest::Approx(0.5));
    CHECK(d.J == doctest::Approx(0.5));

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (auto& f : z) {
        for (std::size_t k = 0; k < f.size(); ++k) f[k] = u(rng);
    }
    d = attractor_distance(z, target);
    double j[4] = {0, 0, 0, 0};
    for (std::size_t k = 0; k < 8; ++k) {
        j[0] += 0.5 * (z[0][k] - 0.7) * (z[0][k] - 0.7) / 8.0;
        j[1] += 0.5 * z[1][k] * z[1][k] / 8.0;
        j[2] += 0.5 * z[2][k] * z[2][k] / 8.0;
        j[3] += 0.5 * z[3][k] * z[3][k] / 8.0;
    }
    for (int c = 0; c < 4; ++c) CHECK(d.components[c] == doctest::Approx(j[c]).epsilon(1e-13));
    CHECK(d.J == d.components[0] + d.components[1] + d.components[2]);

    const State other = make_state(Grid(9, 1.0), 0, 0, 0, 0);
    CHECK_THROWS_AS(attractor_distance(z, other), ContractViolation);
}

TEST_CASE("diagnostics csv round trip")
{
    const Grid g(6, 1.0);
    const State z = make_state(g, 1.0 / 3.0, 0.1, 0.2, 0.3);
    const State target = make_state(g, 0.5, 0, 0, 0);
    std::vector<DiagnosticsRecord> recs{compute_diagnostics(z, 0.0, &target, nullptr),
                                        compute_diagnostics(z, 0.1, nullptr, nullptr)};
    CHECK(std::isnan(recs[0].envelope));
    CHECK(std::isnan(recs[1].J));
    std::stringstream ss;
    write_diagnostics_csv(ss, recs);
    const std::string text = ss.str();
    CHECK(text.rfind(std::string(kDiagnosticsHeader) + "\n", 0) == 0);
    const auto back = read_diagnostics_csv(ss);
    REQUIRE(back.size() == 2);
    CHECK(back[0].masses[0] == recs[0].masses[0]);
    CHECK(back[0].J == recs[0].J);
    CHECK(back[1].Y4 == recs[1].Y4);
    CHECK(std::isnan(back[1].J));
    std::stringstream bad("t,x\n1,2\n");
    CHECK_THROWS_AS(read_diagnostics_csv(bad), ConfigError);
}
