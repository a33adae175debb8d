#pragma once

// Brute-force reference evaluators. Nothing here touches the adaptive
// quadrature engine, the SIMD kernels or the correlations module, so a bug in
// the production path cannot cancel against the same bug here.

#include <functional>

#include "qzeno/model.hpp"

namespace qzeno::oracle {

struct OracleReport {
    double production_value{0.0};
    double oracle_value{0.0};
    double abs_diff{0.0};
    double rel_diff{0.0};
    double tolerance{0.0};
    double abs_floor{0.0};
    bool pass{false};
};

/// pass <=> rel_diff <= tolerance or abs_diff <= abs_floor.
OracleReport compare(double production, double reference, double tolerance, double abs_floor = 1e-14);

/// int_0^tau dt1 int_0^t1 dt2 f(t1 - t2) by composite Simpson in both
/// directions over the triangle (3/8 rule closes odd inner rows, trapezoid for
/// the single-step row). f is sampled on the lattice u = k tau / n. n even, >= 8.
double double_integral_2d(const std::function<double(double)>& f, double tau, int n);

enum class Kernel { PhiR1, PhiI1, PhiR2, PhiI2 };

/// Trapezoid rule with n points on [0, 40 cutoff]; removable singularities at
/// w = 0 take their analytic limit. n >= 1e5. Throws std::domain_error when the
/// integrand diverges at w = 0 (strongly sub-Ohmic baths).
double kernel_quadrature_reference(Kernel which, const SpectralDensity& bath, const Temperature& temp,
                                   double t, int n = 100000);

/// The decay integrand rebuilt from oracle-side kernels: direct closed forms at
/// zero temperature with Ohmic baths, trapezoid references otherwise.
double reference_integrand(const ValidatedConfig& config, double u, int kernel_points = 100000);

/// 1 - 2 double_integral_2d(reference_integrand, tau, n).
double reference_survival(const ValidatedConfig& config, double tau, int n = 400,
                          int kernel_points = 100000);

/// Production survival(config, tau) against reference_survival.
OracleReport check(const ValidatedConfig& config, double tau, double tolerance, int n = 400);

} // namespace qzeno::oracle
