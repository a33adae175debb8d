#include "qzeno/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qzeno/errors.hpp"

namespace qzeno {

namespace {

constexpr std::size_t kMaxOscillationPanels = 200000;

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("correlation kernels require finite t >= 0");
}

// lim_{w->0} J(w) * w^(-power) * coth-factor, the value used at the removable
// singularity of each integrand. Infinite for strongly sub-Ohmic baths.
double origin_limit(const SpectralDensity& j, const Temperature& temp, double power) {
    // J(w) ~ coupling * cutoff^(1-s) * w^s, coth ~ 2 / (beta w).
    double exponent = j.ohmicity - power;
    double scale = j.coupling * std::pow(j.cutoff, 1.0 - j.ohmicity);
    if (!temp.is_zero()) {
        exponent -= 1.0;
        scale *= 2.0 / temp.beta();
    }
    if (scale == 0.0 || exponent > 0.0) return 0.0;
    if (exponent == 0.0) return scale;
    return std::numeric_limits<double>::infinity();
}

std::vector<double> panel_breaks(const SpectralDensity& j, double t) {
    const double top = by_quadrature::truncation_point(j);
    std::vector<double> b{0.0};
    for (double m : {0.25, 1.0, 4.0, 12.0})
        if (m * j.cutoff < top) b.push_back(m * j.cutoff);
    if (t > 0.0) {
        const double half_period = std::numbers::pi / t;
        const double count = std::ceil(top / half_period);
        if (count > static_cast<double>(kMaxOscillationPanels))
            throw QuadratureNonConvergence("kernel quadrature: t too large for oscillation panelling",
                                           std::numeric_limits<double>::quiet_NaN(),
                                           std::numeric_limits<double>::infinity());
        for (std::size_t k = 1; static_cast<double>(k) < count; ++k) b.push_back(k * half_period);
    }
    b.push_back(top);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

template <class Pointwise>
double integrate_kernel(const SpectralDensity& j, double t, const QuadratureSpec& spec, Pointwise point) {
    const auto breaks = panel_breaks(j, t);
    const BatchIntegrand f = [&point](std::span<const double> w, std::span<double> y) {
        for (std::size_t i = 0; i < w.size(); ++i) y[i] = point(w[i]);
    };
    return integrate(f, breaks, spec).value;
}

} // namespace

namespace closed_form {

double phi_r1(const SpectralDensity& strong, double t) {
    const double x = strong.cutoff * t;
    return 2.0 * strong.coupling * std::log1p(x * x);
}

double phi_i1(const SpectralDensity& strong, double t) {
    return 4.0 * strong.coupling * std::atan(strong.cutoff * t);
}

double phi_r2(const SpectralDensity& weak, double t) {
    const double ac2 = weak.cutoff * weak.cutoff;
    const double y2 = ac2 * t * t;
    const double d = 1.0 + y2;
    return weak.coupling * ac2 * (1.0 - y2) / (d * d);
}

double phi_i2(const SpectralDensity& weak, double t) {
    const double ac = weak.cutoff;
    const double y = ac * t;
    const double d = 1.0 + y * y;
    return 2.0 * weak.coupling * ac * ac * y / (d * d);
}

} // namespace closed_form

namespace by_quadrature {

double truncation_point(const SpectralDensity& j) {
    const double p = std::max(j.ohmicity, 1.0);
    double w = 40.0;
    // Tail of x^p e^-x beyond W is about W^p e^-W for W >> p.
    while (p * std::log(w) - w > std::log(1e-14) && w < 1000.0) w += 5.0;
    return w * j.cutoff;
}

double phi_r1(const SpectralDensity& strong, const Temperature& temp, double t, const QuadratureSpec& spec) {
    require_time(t);
    if (t == 0.0 || strong.coupling == 0.0) return 0.0;
    const double at_origin = 4.0 * 0.5 * t * t * origin_limit(strong, temp, 0.0);
    return integrate_kernel(strong, t, spec, [&](double w) {
        if (w == 0.0) return at_origin;
        const double s = std::sin(0.5 * w * t);
        // 1 - cos(wt) = 2 sin^2(wt/2) avoids cancellation at small wt.
        return 4.0 * strong(w) * 2.0 * s * s / (w * w) * temp.coth_factor(w);
    });
}

double phi_i1(const SpectralDensity& strong, double t, const QuadratureSpec& spec) {
    require_time(t);
    if (t == 0.0 || strong.coupling == 0.0) return 0.0;
    const double at_origin = 4.0 * t * origin_limit(strong, Temperature::zero(), 1.0);
    return integrate_kernel(strong, t, spec, [&](double w) {
        if (w == 0.0) return at_origin;
        return 4.0 * strong(w) * std::sin(w * t) / (w * w);
    });
}

double phi_r2(const SpectralDensity& weak, const Temperature& temp, double t, const QuadratureSpec& spec) {
    require_time(t);
    if (weak.coupling == 0.0) return 0.0;
    const double at_origin = origin_limit(weak, temp, 0.0);
    return integrate_kernel(weak, t, spec, [&](double a) {
        if (a == 0.0) return at_origin;
        return weak(a) * std::cos(a * t) * temp.coth_factor(a);
    });
}

double phi_i2(const SpectralDensity& weak, double t, const QuadratureSpec& spec) {
    require_time(t);
    if (t == 0.0 || weak.coupling == 0.0) return 0.0;
    return integrate_kernel(weak, t, spec, [&](double a) { return weak(a) * std::sin(a * t); });
}

} // namespace by_quadrature

double phi_r1(const SpectralDensity& strong, const Temperature& temp, double t, const QuadratureSpec& spec) {
    require_time(t);
    if (temp.is_zero() && strong.is_ohmic()) return closed_form::phi_r1(strong, t);
    return by_quadrature::phi_r1(strong, temp, t, spec);
}

double phi_i1(const SpectralDensity& strong, double t, const QuadratureSpec& spec) {
    require_time(t);
    if (strong.is_ohmic()) return closed_form::phi_i1(strong, t);
    return by_quadrature::phi_i1(strong, t, spec);
}

double phi_r2(const SpectralDensity& weak, const Temperature& temp, double t, const QuadratureSpec& spec) {
    require_time(t);
    if (temp.is_zero() && weak.is_ohmic()) return closed_form::phi_r2(weak, t);
    return by_quadrature::phi_r2(weak, temp, t, spec);
}

double phi_i2(const SpectralDensity& weak, double t, const QuadratureSpec& spec) {
    require_time(t);
    if (weak.is_ohmic()) return closed_form::phi_i2(weak, t);
    return by_quadrature::phi_i2(weak, t, spec);
}

KernelValue kernels(const ValidatedConfig& config, double t, const QuadratureSpec& spec) {
    KernelValue k;
    if (const auto& strong = config.strong()) {
        k.phi_r1 = phi_r1(*strong, config.temperature(), t, spec);
        k.phi_i1 = phi_i1(*strong, t, spec);
    }
    k.phi_r2 = phi_r2(config.weak(), config.temperature(), t, spec);
    k.phi_i2 = phi_i2(config.weak(), t, spec);
    return k;
}

} // namespace qzeno
