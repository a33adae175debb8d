#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qzeno/decay.hpp"
#include "qzeno/oracle.hpp"

using namespace qzeno;
using std::numbers::pi;

namespace {

ModelConfig two(double g = 0.4, double f = 0.03, double delta = 0.05) {
    ModelConfig c;
    c.strong = SpectralDensity{g, 1.0, 1.0};
    c.weak.coupling = f;
    c.system.delta = delta;
    return c;
}

ModelConfig one(double f = 0.03, double delta = 0.05) {
    auto c = two(0.0, f, delta);
    c.strong.reset();
    return c;
}

ValidatedConfig v(const ModelConfig& c) { return validate_or_throw(c); }

bool close(double a, double b, double rel, double abs = 0.0) {
    return std::abs(a - b) <= std::max(abs, rel * std::abs(b));
}

} // namespace

TEST_CASE("two-reservoir integrand") {
    const auto c = v(two());
    CHECK(close(decay_integrand_two(c, 0.0), 0.030625, 1e-15));
    // Independent evaluation of the four closed-form kernels at t' = 1.
    CHECK(close(decay_integrand_two(c, 1.0), -0.0018395871455314213, 1e-12));
    CHECK_THROWS_AS(decay_integrand_two(v(one()), 1.0), std::invalid_argument);
}

TEST_CASE("two-reservoir integrand with G = 0 is the one-reservoir integrand") {
    const auto c = v(two(0.0));
    for (double u : {0.0, 0.3, 1.0, 2.5, 9.0}) CHECK(close(decay_integrand_two(c, u), decay_integrand_one(c, u), 1e-15, 1e-18));
}

TEST_CASE("one-reservoir integrand") {
    CHECK(close(decay_integrand_one(v(one()), 0.0), 0.030625, 1e-15));
    const auto no_weak = v(one(0.0));
    for (double u : {0.0, 0.7, 3.0}) CHECK(close(decay_integrand_one(no_weak, u), 0.000625 * std::cos(u), 1e-15, 1e-20));
    CHECK(close(decay_integrand_one(v(one(0.03, 0.0)), 1.0), 0.015 * std::sin(1.0), 1e-14));
    CHECK(close(decay_integrand_one(v(one(0.03, 0.0)), 1.0), 0.0126221, 1e-5));
}

TEST_CASE("batched integrands match the scalar ones") {
    std::vector<double> u;
    for (int i = 0; i <= 57; ++i) u.push_back(0.173 * i);
    std::vector<double> y(u.size());
    for (const auto& cfg : {two(), two(1.5, 0.1), one()}) {
        const auto c = v(cfg);
        if (c.has_strong()) {
            decay_integrand_two_batch(c)(u, y);
            for (std::size_t i = 0; i < u.size(); ++i) CHECK(close(y[i], decay_integrand_two(c, u[i]), 1e-12, 1e-16));
        }
        decay_integrand_one_batch(c)(u, y);
        for (std::size_t i = 0; i < u.size(); ++i) CHECK(close(y[i], decay_integrand_one(c, u[i]), 1e-12, 1e-16));
    }
}

TEST_CASE("survival at vanishing tau") {
    CHECK(std::abs(survival_two_reservoir(v(two()), 1e-8) - 1.0) < 1e-12);
    CHECK(std::abs(survival_one_reservoir(v(one()), 1e-8) - 1.0) < 1e-12);
}

TEST_CASE("nothing to decay into") {
    CHECK(survival_two_reservoir(v(two(1.3, 0.0, 0.0)), 1.0) == 1.0);
    CHECK(survival_one_reservoir(v(one(0.0, 0.0)), 1.0) == 1.0);
}

TEST_CASE("one-reservoir survival closed form") {
    CHECK(close(survival_one_reservoir(v(one(0.0)), pi), 0.9975, 1e-13));
    const auto p = gamma1(v(one(0.0)), pi);
    REQUIRE(p.ok());
    CHECK(close(*p.gamma, -std::log(0.9975) / pi, 1e-10));
    CHECK(close(*p.gamma, 7.9677e-4, 1e-4));
}

TEST_CASE("survival in (0, 1) at the figure parameters, matching the oracle") {
    for (const auto& cfg : {two(0.4), one()}) {
        const auto c = v(cfg);
        const double s = survival(c, 1.0);
        CHECK(s > 0.0);
        CHECK(s < 1.0);
        CHECK(oracle::check(c, 1.0, 1e-6).pass);
    }
}

TEST_CASE("strong-coupling rate regression against the oracle fixture") {
    // Oracle survival for G = 1.5, F = 0.03 at tau = 0.5, triangle Simpson with
    // n = 400 (tests/data/oracle_survival.csv).
    const double s_oracle = 0.997089577318;
    const auto p = gamma0(v(two(1.5)), 0.5);
    REQUIRE(p.ok());
    CHECK(*p.gamma > 0.0);
    CHECK(close(*p.gamma, -std::log(s_oracle) / 0.5, 1e-6));
}

TEST_CASE("effective rate") {
    auto p = effective_rate(1.0, 1.0);
    CHECK(p.ok());
    CHECK(*p.gamma == 0.0);
    p = effective_rate(std::exp(-2.0), 2.0);
    CHECK(p.ok());
    CHECK(close(*p.gamma, 1.0, 1e-15));
    p = effective_rate(-0.1, 1.0);
    CHECK(p.validity == Validity::SurvivalOutOfRange);
    CHECK_FALSE(p.gamma.has_value());
    CHECK(p.survival == -0.1);
    CHECK_FALSE(effective_rate(0.0, 1.0).ok());
    CHECK_FALSE(effective_rate(1.0 + 1e-12, 1.0).ok());
    CHECK(std::string(to_string(Validity::SurvivalOutOfRange)) == "SurvivalOutOfRange");
}

TEST_CASE("rate picks the variant from the config") {
    const auto c2 = v(two());
    const auto c1 = v(one());
    CHECK(*rate(c2, 0.7).gamma == *gamma0(c2, 0.7).gamma);
    CHECK(*rate(c1, 0.7).gamma == *gamma1(c1, 0.7).gamma);
    CHECK_THROWS_AS(gamma0(c1, 0.7), std::invalid_argument);
    CHECK_THROWS_AS(rate(c2, 0.0), std::invalid_argument);
}

TEST_CASE("gamma and survival come from one integration") {
    const auto p = gamma0(v(two(0.8)), 1.3);
    REQUIRE(p.ok());
    CHECK(*p.gamma == -std::log(p.survival) / 1.3);
}

TEST_CASE("rates vanish in the Zeno limit") {
    const double f0 = 0.030625;
    for (const auto& cfg : {two(), one()}) {
        const auto p = rate(v(cfg), 1e-4);
        REQUIRE(p.ok());
        CHECK(*p.gamma < 1e-4 * 2.0 * f0);
        CHECK(*p.gamma > 0.0);
    }
}

TEST_CASE("perturbation theory breaking down is flagged, not thrown") {
    const auto p = gamma1(v(one(0.1)), 6.0);
    CHECK(p.validity == Validity::SurvivalOutOfRange);
    CHECK_FALSE(p.gamma);
    CHECK(p.survival <= 0.0);
}

TEST_CASE("survival after repeated measurements") {
    RatePoint p = effective_rate(0.99, 1.0);
    CHECK(close(survival_after_n(p, 10), 0.9043820750088045, 1e-14));
    CHECK(survival_after_n(p, 1) == 0.99);
    CHECK(survival_after_n(effective_rate(1.0, 0.5), 1000) == 1.0);
    CHECK_THROWS_AS(survival_after_n(p, 0), std::invalid_argument);
    CHECK_THROWS_AS(survival_after_n(effective_rate(-0.5, 1.0), 3), std::domain_error);

    const auto c = v(two(0.8));
    const MeasurementSchedule sched{0.6, 25};
    const auto point = rate(c, sched.tau);
    CHECK(close(survival_after_n(c, sched), std::exp(-*point.gamma * sched.n * sched.tau), 1e-12));
}

TEST_CASE("finite temperature and non-Ohmic configurations match the oracle") {
    auto warm = two(0.4);
    warm.temperature = Temperature::finite(5.0);
    auto non_ohmic = two(0.4);
    non_ohmic.strong->ohmicity = 2.0;
    non_ohmic.weak.ohmicity = 0.8;
    for (const auto& cfg : {warm, non_ohmic}) {
        const auto c = v(cfg);
        const double s = survival(c, 0.8);
        const double ref = oracle::reference_survival(c, 0.8, 64, 100000);
        CHECK(close(s, ref, 1e-6));
    }
}
