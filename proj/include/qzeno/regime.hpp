#pragma once

// Zeno / anti-Zeno classification of a decay-rate curve Gamma(tau).
// Zeno regime: Gamma decreases as tau decreases (dGamma/dtau > 0).
// Anti-Zeno regime: Gamma increases as tau decreases (dGamma/dtau < 0).
// Transition points are the local extrema of Gamma(tau).

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qzeno/decay.hpp"
#include "qzeno/model.hpp"
#include "qzeno/quadrature.hpp"

namespace qzeno {

enum class Regime { Zeno, AntiZeno, Stationary };
enum class ExtremumKind { MaxToAntiZenoBoundary, MinBoundary };

const char* to_string(Regime r) noexcept;
const char* to_string(ExtremumKind k) noexcept;

struct RateCurve {
    std::vector<RatePoint> points; // strictly increasing tau
    std::string config_digest;
    std::optional<std::string> error; // set when the config could not be evaluated

    /// Number of leading points before the first invalid one.
    std::size_t analyzable_size() const noexcept;
};

struct TransitionPoint {
    double tau_star{0.0};
    ExtremumKind kind{ExtremumKind::MaxToAntiZenoBoundary};
    double gamma_at{0.0};
    double bracket_width{0.0}; // width of the final refinement bracket
};

struct TransitionReport {
    std::vector<TransitionPoint> transitions; // sorted by tau_star
    std::vector<std::string> warnings;
    double analyzable_end{0.0}; // last grid tau with a valid rate

    /// The first maximum, taken as "the" Zeno to anti-Zeno transition.
    std::optional<TransitionPoint> first_maximum() const;
};

/// Sign of a finite-difference slope at tau: central on grid points, the
/// enclosing interval otherwise. |slope| < 1e-6 max|Gamma| is Stationary.
/// Throws InsufficientData when tau is outside the analyzable prefix or fewer
/// than two valid points exist.
Regime classify(const RateCurve& curve, double tau);

std::vector<double> linear_grid(double lo, double hi, int n);

/// Evaluates rate() on every tau (in parallel). Quadrature failures propagate.
RateCurve rate_curve(const ValidatedConfig& config, std::span<const double> taus,
                     const QuadratureSpec& spec = {});

struct ExtremumSearch {
    int n_grid{64};
    /// Final bracket width as a fraction of the tau range.
    double refine_fraction{1e-4};
    /// Evaluate the grid concurrently (gamma must then be thread-safe).
    bool parallel{true};
};

/// Brackets each sign change of the discrete slope of gamma on a uniform grid
/// over [lo, hi] and refines it by golden-section extremum search. gamma
/// returns NaN where the rate is invalid; the range is truncated at the first
/// such grid point.
TransitionReport find_extrema(const std::function<double(double)>& gamma, double lo, double hi,
                              const ExtremumSearch& search = {});

TransitionReport find_transitions(const ValidatedConfig& config, double lo, double hi, int n_grid,
                                  const QuadratureSpec& spec = {}, double refine_fraction = 1e-4);

/// One curve per config on a uniform grid, in input order. A config that fails
/// validation or quadrature yields a curve with `error` set.
std::vector<RateCurve> sweep(std::span<const ModelConfig> configs, double lo, double hi, int n_grid,
                             const QuadratureSpec& spec = {});

} // namespace qzeno
