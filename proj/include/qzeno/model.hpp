#pragma once

// Physical parameters of a two-level system under repeated measurement,
// coupled to a weak dissipative reservoir and optionally to a strong
// dephasing reservoir. Units: hbar = 1, all frequencies and rates share one
// inverse-time unit.

#include <optional>
#include <string>
#include <vector>

#include "qzeno/errors.hpp"

namespace qzeno {

struct SystemParams {
    double epsilon{1.0}; // energy splitting
    double delta{0.05};  // tunneling amplitude

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

/// J(w) = coupling * w^ohmicity * cutoff^(1 - ohmicity) * exp(-w / cutoff)
struct SpectralDensity {
    double coupling{0.0};
    double ohmicity{1.0};
    double cutoff{1.0};

    /// Returns 0 at w <= 0, finite for every w > 0.
    double operator()(double w) const noexcept;

    bool is_ohmic() const noexcept { return ohmicity == 1.0; }

    friend bool operator==(const SpectralDensity&, const SpectralDensity&) = default;
};

/// Either exactly zero temperature or a finite inverse temperature beta.
class Temperature {
public:
    static Temperature zero() noexcept { return Temperature{}; }
    static Temperature finite(double beta) noexcept { return Temperature{beta}; }

    bool is_zero() const noexcept { return !beta_.has_value(); }
    /// Only meaningful when !is_zero().
    double beta() const noexcept { return beta_.value_or(0.0); }

    /// coth(beta*w/2); exactly 1 at zero temperature.
    double coth_factor(double w) const noexcept;

    friend bool operator==(const Temperature&, const Temperature&) = default;

private:
    Temperature() = default;
    explicit Temperature(double beta) : beta_(beta) {}
    std::optional<double> beta_;
};

struct MeasurementSchedule {
    double tau{1.0};
    long n{1};
};

struct ModelConfig {
    SystemParams system{};
    std::optional<SpectralDensity> strong{SpectralDensity{0.4, 1.0, 1.0}};
    SpectralDensity weak{0.03, 1.0, 1.0};
    Temperature temperature{Temperature::zero()};

    bool has_strong() const noexcept { return strong.has_value(); }

    friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// A ModelConfig known to satisfy every invariant. Only validate() makes one.
class ValidatedConfig {
public:
    const ModelConfig& config() const noexcept { return config_; }
    const SystemParams& system() const noexcept { return config_.system; }
    const SpectralDensity& weak() const noexcept { return config_.weak; }
    const std::optional<SpectralDensity>& strong() const noexcept { return config_.strong; }
    const Temperature& temperature() const noexcept { return config_.temperature; }
    bool has_strong() const noexcept { return config_.has_strong(); }

    /// Zero temperature with both baths (or the weak bath alone) Ohmic, so
    /// every correlation kernel has a closed form.
    bool closed_form() const noexcept;

    friend bool operator==(const ValidatedConfig&, const ValidatedConfig&) = default;

private:
    friend struct Validation;
    explicit ValidatedConfig(ModelConfig c) : config_(std::move(c)) {}
    ModelConfig config_;
};

struct Validation {
    std::optional<ValidatedConfig> config;
    std::vector<ConfigError> errors;
    std::vector<std::string> warnings;

    bool ok() const noexcept { return config.has_value(); }

    static Validation run(const ModelConfig& c);
};

/// Reports every violated invariant, not just the first. Emits a warning
/// (not an error) when the strong coupling is below the weak one.
inline Validation validate(const ModelConfig& c) { return Validation::run(c); }

/// Throws ValidationError listing all problems.
ValidatedConfig validate_or_throw(const ModelConfig& c);

/// Fixed-order `key=value; ...` rendering with round-trip precision. Equal
/// configs render identically.
std::string canonical_form(const ModelConfig& c);

/// 64-bit FNV-1a of canonical_form, as 16 hex digits.
std::string digest(const ModelConfig& c);

/// Which decay-rate expression a config selects.
enum class RateVariant { TwoReservoir, WeakOnly };

inline RateVariant variant_of(const ValidatedConfig& c) noexcept {
    return c.has_strong() ? RateVariant::TwoReservoir : RateVariant::WeakOnly;
}

} // namespace qzeno
