#include "qzeno/simd/ohmic_integrand.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "avx2_impl.hpp"

namespace qzeno::simd {

namespace {

void check_sizes(std::size_t in, std::size_t out) {
    if (out < in) throw std::invalid_argument("simd: output span shorter than input");
}

bool cpu_has_avx2() noexcept {
#if (defined(__x86_64__) || defined(__i386__)) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

} // namespace

const char* to_string(SimdLevel level) noexcept {
    return level == SimdLevel::Avx2 ? "avx2" : "scalar";
}

bool avx2_supported() noexcept {
    static const bool ok = detail::avx2_compiled() && cpu_has_avx2();
    return ok;
}

SimdLevel active_level() noexcept {
    static const SimdLevel level = [] {
        if (const char* env = std::getenv("QZENO_SIMD"); env && std::string_view(env) == "scalar")
            return SimdLevel::Scalar;
        return avx2_supported() ? SimdLevel::Avx2 : SimdLevel::Scalar;
    }();
    return level;
}

void ohmic_integrand_scalar(const OhmicIntegrandParams& p, std::span<const double> u,
                            std::span<double> out) {
    check_sizes(u.size(), out.size());
    const double ac2 = p.weak_cutoff * p.weak_cutoff;
    const double tunnel = 0.25 * p.delta * p.delta;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double x = p.strong_cutoff * u[i];
        const double r1 = 2.0 * p.strong_coupling * std::log1p(x * x);
        const double i1 = 4.0 * p.strong_coupling * std::atan(x);
        const double y = p.weak_cutoff * u[i];
        const double y2 = y * y;
        const double d = 1.0 + y2;
        const double inv_d2 = 1.0 / (d * d);
        const double r2 = p.weak_coupling * ac2 * (1.0 - y2) * inv_d2;
        const double i2 = 2.0 * p.weak_coupling * ac2 * y * inv_d2;
        const double theta = p.epsilon * u[i] - i1;
        out[i] = std::exp(-r1) * (std::cos(theta) * (r2 + tunnel) + std::sin(theta) * i2);
    }
}

void ohmic_integrand_avx2(const OhmicIntegrandParams& p, std::span<const double> u,
                          std::span<double> out) {
    check_sizes(u.size(), out.size());
    if (!avx2_supported()) return ohmic_integrand_scalar(p, u, out);
    detail::ohmic_avx2(p, u.data(), out.data(), u.size());
}

void ohmic_integrand(const OhmicIntegrandParams& p, std::span<const double> u,
                     std::span<double> out) {
    if (active_level() == SimdLevel::Avx2)
        ohmic_integrand_avx2(p, u, out);
    else
        ohmic_integrand_scalar(p, u, out);
}

namespace probe {

void exp(std::span<const double> x, std::span<double> y) {
    check_sizes(x.size(), y.size());
    if (!avx2_supported()) {
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::exp(x[i]);
        return;
    }
    detail::exp_avx2(x.data(), y.data(), x.size());
}

void log1p(std::span<const double> x, std::span<double> y) {
    check_sizes(x.size(), y.size());
    if (!avx2_supported()) {
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::log1p(x[i]);
        return;
    }
    detail::log1p_avx2(x.data(), y.data(), x.size());
}

void atan(std::span<const double> x, std::span<double> y) {
    check_sizes(x.size(), y.size());
    if (!avx2_supported()) {
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::atan(x[i]);
        return;
    }
    detail::atan_avx2(x.data(), y.data(), x.size());
}

void sincos(std::span<const double> x, std::span<double> s, std::span<double> c) {
    check_sizes(x.size(), s.size());
    check_sizes(x.size(), c.size());
    if (!avx2_supported()) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            s[i] = std::sin(x[i]);
            c[i] = std::cos(x[i]);
        }
        return;
    }
    detail::sincos_avx2(x.data(), s.data(), c.data(), x.size());
}

} // namespace probe

} // namespace qzeno::simd
