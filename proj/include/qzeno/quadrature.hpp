#pragma once

#include <functional>
#include <span>
#include <type_traits>
#include <vector>

namespace qzeno {

struct QuadratureSpec {
    double abs_tol{1e-10};
    double rel_tol{1e-8};
    int max_subdivisions{2000};

    /// Throws ValidationError (BadQuadratureSpec) on a bad spec.
    void check() const;

    friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

struct IntegrationResult {
    double value{0.0};
    double error{0.0};
    int intervals{0};
};

/// Fills y[i] = f(x[i]). Every integrand in the library is evaluated in
/// batches so the vectorised kernels see whole Kronrod panels at once.
using BatchIntegrand = std::function<void(std::span<const double> x, std::span<double> y)>;

template <class F>
    requires std::is_invocable_r_v<double, F, double>
BatchIntegrand as_batch(F f) {
    return [f = std::move(f)](std::span<const double> x, std::span<double> y) {
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
    };
}

/// Adaptive Gauss-Kronrod (21/10) integration over [a, b] with bisection of
/// the interval carrying the largest error estimate. Stops once the summed
/// error estimate is below max(abs_tol, rel_tol*|value|); throws
/// QuadratureNonConvergence after max_subdivisions bisections.
IntegrationResult integrate(const BatchIntegrand& f, double a, double b,
                            const QuadratureSpec& spec = {});

/// Same, starting from the partition given by sorted breakpoints
/// (at least two). Bisections are counted on top of the initial panels.
IntegrationResult integrate(const BatchIntegrand& f, std::span<const double> breakpoints,
                            const QuadratureSpec& spec = {});

template <class F>
    requires std::is_invocable_r_v<double, F, double>
IntegrationResult integrate(F f, double a, double b, const QuadratureSpec& spec = {}) {
    return integrate(as_batch(std::move(f)), a, b, spec);
}

/// int_0^tau dt int_0^t du f(u), computed as the single integral
/// int_0^tau (tau - u) f(u) du obtained by swapping the integration order.
double weighted_time_integral(const BatchIntegrand& f, double tau,
                              const QuadratureSpec& spec = {});

template <class F>
    requires std::is_invocable_r_v<double, F, double>
double weighted_time_integral(F f, double tau, const QuadratureSpec& spec = {}) {
    return weighted_time_integral(as_batch(std::move(f)), tau, spec);
}

} // namespace qzeno
