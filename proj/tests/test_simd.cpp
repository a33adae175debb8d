#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qzeno/simd/ohmic_integrand.hpp"

using namespace qzeno::simd;

namespace {

std::vector<double> uniform(std::size_t n, double lo, double hi, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

double max_rel(const std::vector<double>& got, const std::vector<double>& want, double floor) {
    double worst = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i)
        worst = std::max(worst, std::abs(got[i] - want[i]) / std::max(std::abs(want[i]), floor));
    return worst;
}

} // namespace

TEST_CASE("level reporting") {
    CHECK((active_level() == SimdLevel::Scalar || active_level() == SimdLevel::Avx2));
    if (!avx2_supported()) CHECK(active_level() == SimdLevel::Scalar);
    CHECK(std::string(to_string(SimdLevel::Avx2)) == "avx2");
}

TEST_CASE("vector exp against std::exp") {
    auto x = uniform(4099, -700.0, 700.0, 1);
    x.push_back(0.0);
    x.push_back(-745.5);
    std::vector<double> got(x.size()), want(x.size());
    probe::exp(x, got);
    for (std::size_t i = 0; i < x.size(); ++i) want[i] = std::exp(x[i]);
    CHECK(max_rel(got, want, 1e-300) < 4e-15);
}

TEST_CASE("vector log1p against std::log1p") {
    auto x = uniform(4097, 0.0, 1e4, 2);
    auto small = uniform(1000, 0.0, 1e-6, 3);
    x.insert(x.end(), small.begin(), small.end());
    x.push_back(0.0);
    x.push_back(1e300);
    std::vector<double> got(x.size()), want(x.size());
    probe::log1p(x, got);
    for (std::size_t i = 0; i < x.size(); ++i) want[i] = std::log1p(x[i]);
    CHECK(max_rel(got, want, 1e-300) < 4e-15);
}

TEST_CASE("vector atan against std::atan") {
    auto x = uniform(4097, -50.0, 50.0, 4);
    auto wide = uniform(1000, -1e8, 1e8, 5);
    x.insert(x.end(), wide.begin(), wide.end());
    x.push_back(0.0);
    std::vector<double> got(x.size()), want(x.size());
    probe::atan(x, got);
    for (std::size_t i = 0; i < x.size(); ++i) want[i] = std::atan(x[i]);
    CHECK(max_rel(got, want, 1e-300) < 4e-15);
}

TEST_CASE("vector sincos against std::sin and std::cos") {
    auto x = uniform(4099, -1e3, 1e3, 6);
    auto huge = uniform(64, 1e6, 1e9, 7);
    x.insert(x.end(), huge.begin(), huge.end());
    std::vector<double> s(x.size()), c(x.size()), ws(x.size()), wc(x.size());
    probe::sincos(x, s, c);
    for (std::size_t i = 0; i < x.size(); ++i) {
        ws[i] = std::sin(x[i]);
        wc[i] = std::cos(x[i]);
    }
    // Absolute error is the meaningful measure near the zeros.
    CHECK(max_rel(s, ws, 1.0) < 1e-14);
    CHECK(max_rel(c, wc, 1.0) < 1e-14);
}

TEST_CASE("vector integrand matches the scalar reference for every tail length") {
    const OhmicIntegrandParams params[] = {
        {0.4, 1.0, 0.03, 1.0, 1.0, 0.05},
        {1.5, 2.0, 0.1, 0.5, 3.0, 0.2},
        {0.0, 1.0, 0.05, 1.0, 1.0, 0.05},
        {2.0, 0.3, 0.0, 1.0, 0.7, 0.0},
    };
    for (const auto& p : params) {
        for (std::size_t n = 0; n <= 41; ++n) {
            const auto u = uniform(n, 0.0, 20.0, static_cast<unsigned>(100 + n));
            std::vector<double> scalar(n), vec(n, -1.0), dispatched(n, -2.0);
            ohmic_integrand_scalar(p, u, scalar);
            ohmic_integrand_avx2(p, u, vec);
            ohmic_integrand(p, u, dispatched);
            for (std::size_t i = 0; i < n; ++i) {
                CAPTURE(u[i]);
                const double tol = 1e-13 * std::max(std::abs(scalar[i]), 1e-3 * (p.weak_coupling + p.delta * p.delta));
                CHECK(std::abs(vec[i] - scalar[i]) <= tol);
                CHECK(std::abs(dispatched[i] - scalar[i]) <= tol);
            }
        }
    }
}

TEST_CASE("scalar integrand matches the formula written out with cmath") {
    const OhmicIntegrandParams p{0.8, 1.2, 0.05, 0.9, 1.1, 0.07};
    const auto u = uniform(200, 0.0, 30.0, 9);
    std::vector<double> got(u.size());
    ohmic_integrand_scalar(p, u, got);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double t = u[i];
        const double wt = p.strong_cutoff * t, at = p.weak_cutoff * t;
        const double r1 = 2.0 * p.strong_coupling * std::log(1.0 + wt * wt);
        const double i1 = 4.0 * p.strong_coupling * std::atan(wt);
        const double den = (1.0 + at * at) * (1.0 + at * at);
        const double r2 = p.weak_coupling * p.weak_cutoff * p.weak_cutoff * (1.0 - at * at) / den;
        const double i2 = 2.0 * p.weak_coupling * p.weak_cutoff * p.weak_cutoff * at / den;
        const double ph = p.epsilon * t - i1;
        const double want = std::exp(-r1) * (std::cos(ph) * (r2 + 0.25 * p.delta * p.delta) + std::sin(ph) * i2);
        CHECK(std::abs(got[i] - want) <= 1e-13 * std::max(std::abs(want), 1e-6));
    }
}

TEST_CASE("output span must cover the input") {
    std::vector<double> u(5, 1.0), out(4);
    CHECK_THROWS_AS(ohmic_integrand({}, u, out), std::invalid_argument);
}
