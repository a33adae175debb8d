#include "qzeno/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qzeno/decay.hpp"

namespace qzeno::oracle {

namespace {

// Simpson (or 3/8 / trapezoid for short or odd rows) weights, in units of h,
// for a row of m intervals: returns m + 1 weights.
std::vector<double> row_weights(int m) {
    std::vector<double> w(static_cast<std::size_t>(m) + 1, 0.0);
    if (m == 0) return w;
    if (m == 1) {
        w[0] = w[1] = 0.5;
        return w;
    }
    const int simpson_end = (m % 2 == 0) ? m : m - 3;
    for (int j = 0; j + 2 <= simpson_end; j += 2) {
        w[j] += 1.0 / 3.0;
        w[j + 1] += 4.0 / 3.0;
        w[j + 2] += 1.0 / 3.0;
    }
    if (m % 2 == 1) {
        const int j = m - 3;
        w[j] += 3.0 / 8.0;
        w[j + 1] += 9.0 / 8.0;
        w[j + 2] += 9.0 / 8.0;
        w[j + 3] += 3.0 / 8.0;
    }
    return w;
}

double bath_at(const SpectralDensity& j, double w) {
    if (w <= 0.0) return 0.0;
    return j.coupling * std::pow(w, j.ohmicity) * std::pow(j.cutoff, 1.0 - j.ohmicity) * std::exp(-w / j.cutoff);
}

double coth_half(const Temperature& temp, double w) {
    if (temp.is_zero()) return 1.0;
    return std::cosh(0.5 * temp.beta() * w) / std::sinh(0.5 * temp.beta() * w);
}

// Value of the kernel integrand at w = 0.
double at_origin(Kernel which, const SpectralDensity& j, const Temperature& temp, double t) {
    // Near 0: J(w) ~ c w^s with c = coupling cutoff^(1-s); coth ~ 2/(beta w).
    const double c = j.coupling * std::pow(j.cutoff, 1.0 - j.ohmicity);
    double power = j.ohmicity;
    double scale = c;
    switch (which) {
    case Kernel::PhiR1: scale *= 2.0 * t * t; break; // 4 J (t^2/2)
    case Kernel::PhiI1: scale *= 4.0 * t; power -= 1.0; break;
    case Kernel::PhiR2: break;
    case Kernel::PhiI2: return 0.0;
    }
    if (which != Kernel::PhiI1 && !temp.is_zero()) {
        scale *= 2.0 / temp.beta();
        power -= 1.0;
    }
    if (scale == 0.0 || power > 0.0) return 0.0;
    if (power == 0.0) return scale;
    throw std::domain_error("kernel_quadrature_reference: integrand diverges at w = 0");
}

} // namespace

OracleReport compare(double production, double reference, double tolerance, double abs_floor) {
    OracleReport r;
    r.production_value = production;
    r.oracle_value = reference;
    r.abs_diff = std::abs(production - reference);
    r.rel_diff = reference != 0.0 ? r.abs_diff / std::abs(reference)
                                  : (r.abs_diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    r.tolerance = tolerance;
    r.abs_floor = abs_floor;
    r.pass = r.rel_diff <= tolerance || r.abs_diff <= abs_floor;
    return r;
}

double double_integral_2d(const std::function<double(double)>& f, double tau, int n) {
    if (n < 8 || n % 2 != 0) throw std::invalid_argument("double_integral_2d: n must be even and >= 8");
    if (!(tau > 0.0)) throw std::invalid_argument("double_integral_2d: tau must be > 0");
    const double h = tau / n;
    std::vector<double> lattice(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) lattice[k] = f(k * h);

    // inner[i] = int_0^{t_i} f(t_i - t2) dt2 with t2 on the same grid.
    std::vector<double> inner(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 1; i <= n; ++i) {
        const auto w = row_weights(i);
        double acc = 0.0;
        for (int j = 0; j <= i; ++j) acc += w[j] * lattice[i - j];
        inner[i] = acc * h;
    }
    const auto outer = row_weights(n);
    double total = 0.0;
    for (int i = 0; i <= n; ++i) total += outer[i] * inner[i];
    return total * h;
}

double kernel_quadrature_reference(Kernel which, const SpectralDensity& bath, const Temperature& temp,
                                   double t, int n) {
    if (n < 100000) throw std::invalid_argument("kernel_quadrature_reference: n must be >= 1e5");
    const double top = 40.0 * bath.cutoff;
    const double h = top / (n - 1);
    auto integrand = [&](double w) {
        const double j = bath_at(bath, w);
        switch (which) {
        case Kernel::PhiR1: return 4.0 * j * (1.0 - std::cos(w * t)) / (w * w) * coth_half(temp, w);
        case Kernel::PhiI1: return 4.0 * j * std::sin(w * t) / (w * w);
        case Kernel::PhiR2: return j * std::cos(w * t) * coth_half(temp, w);
        case Kernel::PhiI2: return j * std::sin(w * t);
        }
        return 0.0;
    };
    double sum = 0.5 * at_origin(which, bath, temp, t);
    for (int k = 1; k < n - 1; ++k) sum += integrand(k * h);
    sum += 0.5 * integrand(top);
    return sum * h;
}

double reference_integrand(const ValidatedConfig& config, double u, int kernel_points) {
    const auto& sys = config.system();
    const auto& temp = config.temperature();
    const auto& weak = config.weak();
    double r1 = 0.0, i1 = 0.0, r2, i2;

    if (temp.is_zero() && weak.is_ohmic()) {
        const double ac = weak.cutoff, F = weak.coupling;
        const double den = (1.0 + ac * ac * u * u) * (1.0 + ac * ac * u * u);
        r2 = F * ac * ac * (1.0 - ac * ac * u * u) / den;
        i2 = 2.0 * F * ac * ac * ac * u / den;
    } else {
        r2 = kernel_quadrature_reference(Kernel::PhiR2, weak, temp, u, kernel_points);
        i2 = kernel_quadrature_reference(Kernel::PhiI2, weak, temp, u, kernel_points);
    }
    if (const auto& strong = config.strong()) {
        if (strong->is_ohmic()) {
            const double wc = strong->cutoff, G = strong->coupling;
            i1 = 4.0 * G * std::atan(wc * u);
            r1 = temp.is_zero() ? 2.0 * G * std::log(1.0 + wc * wc * u * u)
                                : kernel_quadrature_reference(Kernel::PhiR1, *strong, temp, u, kernel_points);
        } else {
            r1 = kernel_quadrature_reference(Kernel::PhiR1, *strong, temp, u, kernel_points);
            i1 = kernel_quadrature_reference(Kernel::PhiI1, *strong, temp, u, kernel_points);
        }
    }
    // Re[C K e^{i eps u}] + (delta^2/4) Re[C e^{i eps u}]
    const double phase = sys.epsilon * u - i1;
    const double envelope = std::exp(-r1);
    return envelope * (r2 * std::cos(phase) + i2 * std::sin(phase)) +
           0.25 * sys.delta * sys.delta * envelope * std::cos(phase);
}

double reference_survival(const ValidatedConfig& config, double tau, int n, int kernel_points) {
    const auto f = [&](double u) { return reference_integrand(config, u, kernel_points); };
    return 1.0 - 2.0 * double_integral_2d(f, tau, n);
}

OracleReport check(const ValidatedConfig& config, double tau, double tolerance, int n) {
    return compare(survival(config, tau), reference_survival(config, tau, n), tolerance);
}

} // namespace qzeno::oracle
