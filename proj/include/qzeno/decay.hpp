#pragma once

// Survival probabilities and effective decay rates under repeated
// projective measurements at interval tau.
//
//   s(tau)     = 1 - 2 int_0^tau (tau - u) f(u) du
//   Gamma(tau) = -ln s(tau) / tau
//
// where f is decay_integrand_two (both reservoirs, polaron frame) or
// decay_integrand_one (weak dissipative reservoir only).

#include <optional>
#include <span>

#include "qzeno/model.hpp"
#include "qzeno/quadrature.hpp"

namespace qzeno {

enum class Validity { Ok, SurvivalOutOfRange };

const char* to_string(Validity v) noexcept;

struct RatePoint {
    double tau{0.0};
    /// Present only when validity == Ok.
    std::optional<double> gamma;
    /// Raw perturbative s(tau), possibly outside (0, 1].
    double survival{1.0};
    Validity validity{Validity::Ok};

    bool ok() const noexcept { return validity == Validity::Ok; }
};

/// e^{-phi_r1} [cos(eps u - phi_i1)(phi_r2 + delta^2/4) + sin(eps u - phi_i1) phi_i2].
/// Requires a strong reservoir.
double decay_integrand_two(const ValidatedConfig& config, double u, const QuadratureSpec& spec = {});

/// cos(eps u)(phi_r2 + delta^2/4) + sin(eps u) phi_i2. Ignores any strong reservoir.
double decay_integrand_one(const ValidatedConfig& config, double u, const QuadratureSpec& spec = {});

/// Batched forms of the two integrands; zero-temperature Ohmic configs go
/// through the SIMD kernel, everything else evaluates the kernels per node.
BatchIntegrand decay_integrand_two_batch(const ValidatedConfig& config, const QuadratureSpec& spec = {});
BatchIntegrand decay_integrand_one_batch(const ValidatedConfig& config, const QuadratureSpec& spec = {});

double survival_two_reservoir(const ValidatedConfig& config, double tau, const QuadratureSpec& spec = {});
double survival_one_reservoir(const ValidatedConfig& config, double tau, const QuadratureSpec& spec = {});

/// Picks the two- or one-reservoir survival from the config.
double survival(const ValidatedConfig& config, double tau, const QuadratureSpec& spec = {});

RatePoint effective_rate(double survival, double tau);

RatePoint gamma0(const ValidatedConfig& config, double tau, const QuadratureSpec& spec = {});
RatePoint gamma1(const ValidatedConfig& config, double tau, const QuadratureSpec& spec = {});

/// gamma0 with a strong reservoir, gamma1 without.
RatePoint rate(const ValidatedConfig& config, double tau, const QuadratureSpec& spec = {});

/// s(tau)^N for a point whose validity is Ok; throws std::domain_error otherwise.
double survival_after_n(const RatePoint& point, long n);
double survival_after_n(const ValidatedConfig& config, const MeasurementSchedule& schedule,
                        const QuadratureSpec& spec = {});

} // namespace qzeno
