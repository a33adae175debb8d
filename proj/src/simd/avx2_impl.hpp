#pragma once

// Raw-pointer entry points of the AVX2 translation unit. Only call these after
// checking avx2_compiled() and the CPU feature bits.

#include <cstddef>

#include "qzeno/simd/ohmic_integrand.hpp"

namespace qzeno::simd::detail {

bool avx2_compiled() noexcept;

void ohmic_avx2(const OhmicIntegrandParams& p, const double* u, double* out, std::size_t n);

void exp_avx2(const double* x, double* y, std::size_t n);
void log1p_avx2(const double* x, double* y, std::size_t n);
void atan_avx2(const double* x, double* y, std::size_t n);
void sincos_avx2(const double* x, double* s, double* c, std::size_t n);

} // namespace qzeno::simd::detail
