#include "qzeno/decay.hpp"

#include <cmath>
#include <stdexcept>

#include "qzeno/correlations.hpp"
#include "qzeno/simd/ohmic_integrand.hpp"

namespace qzeno {

namespace {

void require_strong(const ValidatedConfig& c) {
    if (!c.has_strong()) throw std::invalid_argument("two-reservoir rate requires a strong reservoir");
}

void require_tau(double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be finite and > 0");
}

simd::OhmicIntegrandParams ohmic_params(const ValidatedConfig& c, bool with_strong) {
    simd::OhmicIntegrandParams p;
    if (with_strong) {
        p.strong_coupling = c.strong()->coupling;
        p.strong_cutoff = c.strong()->cutoff;
    }
    p.weak_coupling = c.weak().coupling;
    p.weak_cutoff = c.weak().cutoff;
    p.epsilon = c.system().epsilon;
    p.delta = c.system().delta;
    return p;
}

double combine(const KernelValue& k, double epsilon, double delta, double u) {
    const double theta = epsilon * u - k.phi_i1;
    const double tunnel = 0.25 * delta * delta;
    return std::exp(-k.phi_r1) * (std::cos(theta) * (k.phi_r2 + tunnel) + std::sin(theta) * k.phi_i2);
}

BatchIntegrand make_batch(const ValidatedConfig& config, bool with_strong, const QuadratureSpec& spec) {
    const bool closed = config.temperature().is_zero() && config.weak().is_ohmic() &&
                        (!with_strong || config.strong()->is_ohmic());
    if (closed) {
        const auto p = ohmic_params(config, with_strong);
        return [p](std::span<const double> u, std::span<double> y) { simd::ohmic_integrand(p, u, y); };
    }
    return [config, with_strong, spec](std::span<const double> u, std::span<double> y) {
        for (std::size_t i = 0; i < u.size(); ++i)
            y[i] = with_strong ? decay_integrand_two(config, u[i], spec) : decay_integrand_one(config, u[i], spec);
    };
}

} // namespace

const char* to_string(Validity v) noexcept {
    return v == Validity::Ok ? "Ok" : "SurvivalOutOfRange";
}

double decay_integrand_two(const ValidatedConfig& config, double u, const QuadratureSpec& spec) {
    require_strong(config);
    return combine(kernels(config, u, spec), config.system().epsilon, config.system().delta, u);
}

double decay_integrand_one(const ValidatedConfig& config, double u, const QuadratureSpec& spec) {
    KernelValue k;
    k.phi_r2 = phi_r2(config.weak(), config.temperature(), u, spec);
    k.phi_i2 = phi_i2(config.weak(), u, spec);
    return combine(k, config.system().epsilon, config.system().delta, u);
}

BatchIntegrand decay_integrand_two_batch(const ValidatedConfig& config, const QuadratureSpec& spec) {
    require_strong(config);
    return make_batch(config, true, spec);
}

BatchIntegrand decay_integrand_one_batch(const ValidatedConfig& config, const QuadratureSpec& spec) {
    return make_batch(config, false, spec);
}

double survival_two_reservoir(const ValidatedConfig& config, double tau, const QuadratureSpec& spec) {
    require_tau(tau);
    return 1.0 - 2.0 * weighted_time_integral(decay_integrand_two_batch(config, spec), tau, spec);
}

double survival_one_reservoir(const ValidatedConfig& config, double tau, const QuadratureSpec& spec) {
    require_tau(tau);
    return 1.0 - 2.0 * weighted_time_integral(decay_integrand_one_batch(config, spec), tau, spec);
}

double survival(const ValidatedConfig& config, double tau, const QuadratureSpec& spec) {
    return config.has_strong() ? survival_two_reservoir(config, tau, spec)
                               : survival_one_reservoir(config, tau, spec);
}

RatePoint effective_rate(double s, double tau) {
    require_tau(tau);
    RatePoint p;
    p.tau = tau;
    p.survival = s;
    if (s > 0.0 && s <= 1.0) {
        p.gamma = -std::log(s) / tau;
        p.validity = Validity::Ok;
    } else {
        p.validity = Validity::SurvivalOutOfRange;
    }
    return p;
}

RatePoint gamma0(const ValidatedConfig& config, double tau, const QuadratureSpec& spec) {
    return effective_rate(survival_two_reservoir(config, tau, spec), tau);
}

RatePoint gamma1(const ValidatedConfig& config, double tau, const QuadratureSpec& spec) {
    return effective_rate(survival_one_reservoir(config, tau, spec), tau);
}

RatePoint rate(const ValidatedConfig& config, double tau, const QuadratureSpec& spec) {
    return config.has_strong() ? gamma0(config, tau, spec) : gamma1(config, tau, spec);
}

double survival_after_n(const RatePoint& point, long n) {
    if (n < 1) throw std::invalid_argument("number of measurements must be >= 1");
    if (!point.ok()) throw std::domain_error("survival_after_n: single-interval survival is out of range");
    return std::pow(point.survival, static_cast<double>(n));
}

double survival_after_n(const ValidatedConfig& config, const MeasurementSchedule& schedule,
                        const QuadratureSpec& spec) {
    return survival_after_n(rate(config, schedule.tau, spec), schedule.n);
}

} // namespace qzeno
