#pragma once

// Batched evaluation of the zero-temperature Ohmic decay integrand
//
//   f(u) = exp(-R1) * [cos(eps*u - I1) * (R2 + delta^2/4) + sin(eps*u - I1) * I2]
//
// with R1 = 2G ln(1 + wc^2 u^2), I1 = 4G atan(wc u),
//      R2 = F ac^2 (1 - ac^2 u^2) / (1 + ac^2 u^2)^2,
//      I2 = 2F ac^3 u / (1 + ac^2 u^2)^2.
// Setting G = 0 gives the weak-reservoir-only integrand exactly.
//
// A scalar reference and an AVX2/FMA variant are provided; ohmic_integrand()
// picks one at runtime. The variants agree to a few ulp of the term scale.

#include <span>

namespace qzeno::simd {

struct OhmicIntegrandParams {
    double strong_coupling{0.0}; // G
    double strong_cutoff{1.0};   // omega_c
    double weak_coupling{0.0};   // F
    double weak_cutoff{1.0};     // alpha_c
    double epsilon{1.0};
    double delta{0.0};
};

enum class SimdLevel { Scalar, Avx2 };

const char* to_string(SimdLevel level) noexcept;

/// True when the CPU (and the build) support the AVX2 + FMA path.
bool avx2_supported() noexcept;

/// Best supported level, unless QZENO_SIMD=scalar is set in the environment.
/// Resolved once per process.
SimdLevel active_level() noexcept;

void ohmic_integrand_scalar(const OhmicIntegrandParams& p, std::span<const double> u,
                            std::span<double> out);

/// Requires avx2_supported(); falls back to the scalar path otherwise.
void ohmic_integrand_avx2(const OhmicIntegrandParams& p, std::span<const double> u,
                          std::span<double> out);

void ohmic_integrand(const OhmicIntegrandParams& p, std::span<const double> u,
                     std::span<double> out);

/// Elementwise vector-math primitives backing the AVX2 kernel, exposed so the
/// tests can check them against <cmath>. Same fallback rule as above.
namespace probe {
void exp(std::span<const double> x, std::span<double> y);
void log1p(std::span<const double> x, std::span<double> y); // x >= 0
void atan(std::span<const double> x, std::span<double> y);
void sincos(std::span<const double> x, std::span<double> s, std::span<double> c);
} // namespace probe

} // namespace qzeno::simd
