#pragma once

// Bath correlation kernels.
//
//   phi_r1(t) = 4 int_0^inf J(w) (1 - cos wt) / w^2 coth(beta w / 2) dw
//   phi_i1(t) = 4 int_0^inf J(w) sin(wt) / w^2 dw
//   phi_r2(t) =   int_0^inf H(a) cos(at) coth(beta a / 2) da
//   phi_i2(t) =   int_0^inf H(a) sin(at) da
//
// C(t) = exp(-phi_r1) exp(-i phi_i1) is the dressed strong-bath correlation and
// K(t) = phi_r2 - i phi_i2 the weak-bath one. Zero-temperature Ohmic baths use
// closed forms; everything else goes through adaptive quadrature on the
// truncated frequency axis.

#include <complex>

#include "qzeno/model.hpp"
#include "qzeno/quadrature.hpp"

namespace qzeno {

struct KernelValue {
    double phi_r1{0.0};
    double phi_i1{0.0};
    double phi_r2{0.0};
    double phi_i2{0.0};

    std::complex<double> strong_correlation() const {
        return std::exp(-phi_r1) * std::polar(1.0, -phi_i1);
    }
    std::complex<double> weak_correlation() const { return {phi_r2, -phi_i2}; }
};

double phi_r1(const SpectralDensity& strong, const Temperature& temp, double t,
              const QuadratureSpec& spec = {});
double phi_i1(const SpectralDensity& strong, double t, const QuadratureSpec& spec = {});
double phi_r2(const SpectralDensity& weak, const Temperature& temp, double t,
              const QuadratureSpec& spec = {});
double phi_i2(const SpectralDensity& weak, double t, const QuadratureSpec& spec = {});

/// All four kernels at one t. phi_r1 = phi_i1 = 0 without a strong bath.
KernelValue kernels(const ValidatedConfig& config, double t, const QuadratureSpec& spec = {});

/// Zero-temperature Ohmic closed forms (ohmicity is ignored).
namespace closed_form {
double phi_r1(const SpectralDensity& strong, double t);
double phi_i1(const SpectralDensity& strong, double t);
double phi_r2(const SpectralDensity& weak, double t);
double phi_i2(const SpectralDensity& weak, double t);
} // namespace closed_form

/// Always integrates numerically, whatever the bath. Used by the dispatchers
/// above for non-closed-form cases and by tests to cross-check closed forms.
namespace by_quadrature {
double phi_r1(const SpectralDensity& strong, const Temperature& temp, double t,
              const QuadratureSpec& spec = {});
double phi_i1(const SpectralDensity& strong, double t, const QuadratureSpec& spec = {});
double phi_r2(const SpectralDensity& weak, const Temperature& temp, double t,
              const QuadratureSpec& spec = {});
double phi_i2(const SpectralDensity& weak, double t, const QuadratureSpec& spec = {});

/// Upper frequency limit W*cutoff, W >= 40, chosen so that the neglected
/// tail of w^ohmicity e^(-w/cutoff) is below 1e-14 of its scale.
double truncation_point(const SpectralDensity& j);
} // namespace by_quadrature

} // namespace qzeno
