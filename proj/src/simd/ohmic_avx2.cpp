#include "avx2_impl.hpp"

#include <array>
#include <cmath>

#if defined(__x86_64__) || defined(__i386__)
#define QZENO_HAVE_X86 1
#include <immintrin.h>
#else
#define QZENO_HAVE_X86 0
#endif

namespace qzeno::simd::detail {

namespace {

// Taylor coefficients 1/k!, k = 0..20.
constexpr std::array<double, 21> kInvFactorial = [] {
    std::array<double, 21> c{};
    double f = 1.0;
    for (int k = 0; k < 21; ++k) {
        if (k > 0) f *= k;
        c[k] = 1.0 / f;
    }
    return c;
}();

constexpr double kLn2Hi = 0x1.62e42fee00000p-1;
constexpr double kLn2Lo = 0x1.a39ef35793c76p-33;
constexpr double kLog2e = 0x1.71547652b82fep+0;
constexpr double kPiO2 = 0x1.921fb54442d18p+0;
constexpr double kPiO4 = 0x1.921fb54442d18p-1;
constexpr double kTwoOPi = 0x1.45f306dc9c883p-1;
// pi/2 split so that k * kPiO2Hi is exact for |k| < 2^22.
constexpr double kPiO2Hi = 0x1.921fb54000000p+0;
constexpr double kPiO2Mid = 0x1.10b4611800000p-30;
constexpr double kPiO2Lo = 0x1.313198a2e0370p-61;
constexpr double kTanPiO8 = 0.41421356237309503;
constexpr double kSqrt2 = 1.4142135623730951;
// Beyond this |x| the three-part reduction loses bits; such lanes go scalar.
constexpr double kSinCosLimit = 1e6;
// Round-to-integer / int64 conversion constant, 1.5 * 2^52.
constexpr double kMagic = 0x1.8p52;

} // namespace

#if QZENO_HAVE_X86

#pragma GCC push_options
#pragma GCC target("avx2,fma")

namespace {

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

// k integral with |k| < 2^51.
inline __m256i to_int64(__m256d k) {
    const __m256d m = splat(kMagic);
    return _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(k, m)), _mm256_castpd_si256(m));
}

inline __m256d round_nearest(__m256d x) {
    return _mm256_round_pd(x, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
}

inline __m256d exp_pd(__m256d x) {
    const __m256d underflow = _mm256_cmp_pd(x, splat(-708.0), _CMP_LT_OQ);
    x = _mm256_max_pd(_mm256_min_pd(x, splat(709.0)), splat(-708.0));
    const __m256d k = round_nearest(_mm256_mul_pd(x, splat(kLog2e)));
    __m256d r = _mm256_fnmadd_pd(k, splat(kLn2Hi), x);
    r = _mm256_fnmadd_pd(k, splat(kLn2Lo), r);
    // |r| <= ln2/2, degree 13 leaves < 1e-17 relative truncation.
    __m256d p = splat(kInvFactorial[13]);
    for (int j = 12; j >= 0; --j) p = _mm256_fmadd_pd(p, r, splat(kInvFactorial[j]));
    const __m256i e = _mm256_slli_epi64(_mm256_add_epi64(to_int64(k), _mm256_set1_epi64x(1023)), 52);
    const __m256d y = _mm256_mul_pd(p, _mm256_castsi256_pd(e));
    return _mm256_andnot_pd(underflow, y);
}

// log(1 + x) for finite x >= 0.
inline __m256d log1p_pd(__m256d x) {
    const __m256d one = splat(1.0);
    const __m256d y = _mm256_add_pd(one, x);
    const __m256i bits = _mm256_castpd_si256(y);
    const __m256i biased = _mm256_srli_epi64(bits, 52);
    const __m256i mant = _mm256_and_si256(bits, _mm256_set1_epi64x(0x000fffffffffffffLL));
    __m256d m = _mm256_castsi256_pd(_mm256_or_si256(mant, _mm256_set1_epi64x(0x3ff0000000000000LL)));
    const __m256d two52 = splat(0x1p52);
    __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(biased, _mm256_castpd_si256(two52))), two52);
    e = _mm256_sub_pd(e, splat(1023.0));
    const __m256d big = _mm256_cmp_pd(m, splat(kSqrt2), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, splat(0.5)), big);
    e = _mm256_add_pd(e, _mm256_and_pd(big, one));

    // log m = 2 atanh(z), |z| <= 0.1716.
    const __m256d z = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    const __m256d z2 = _mm256_mul_pd(z, z);
    __m256d p = splat(1.0 / 23.0);
    for (int k = 10; k >= 0; --k) p = _mm256_fmadd_pd(p, z2, splat(1.0 / (2 * k + 1)));
    const __m256d logm = _mm256_mul_pd(_mm256_add_pd(z, z), p);

    __m256d res = _mm256_fmadd_pd(e, splat(kLn2Lo), logm);
    res = _mm256_fmadd_pd(e, splat(kLn2Hi), res);
    // Recover the rounding lost in forming 1 + x.
    const __m256d corr = _mm256_div_pd(_mm256_sub_pd(x, _mm256_sub_pd(y, one)), y);
    return _mm256_add_pd(res, corr);
}

inline __m256d atan_pd(__m256d x) {
    const __m256d sign_bit = splat(-0.0);
    const __m256d one = splat(1.0);
    const __m256d sign = _mm256_and_pd(x, sign_bit);
    const __m256d a = _mm256_andnot_pd(sign_bit, x);
    const __m256d inv = _mm256_cmp_pd(a, one, _CMP_GT_OQ);
    const __m256d a1 = _mm256_blendv_pd(a, _mm256_div_pd(one, a), inv);
    const __m256d red = _mm256_cmp_pd(a1, splat(kTanPiO8), _CMP_GT_OQ);
    const __m256d a2 = _mm256_blendv_pd(a1, _mm256_div_pd(_mm256_sub_pd(a1, one), _mm256_add_pd(a1, one)), red);
    const __m256d z2 = _mm256_mul_pd(a2, a2);
    // sum_k (-1)^k z^(2k) / (2k+1), |z| <= tan(pi/8).
    constexpr int kTerms = 22;
    __m256d p = splat(((kTerms % 2) ? -1.0 : 1.0) / (2 * kTerms + 1));
    for (int k = kTerms - 1; k >= 0; --k)
        p = _mm256_fmadd_pd(p, z2, splat(((k % 2) ? -1.0 : 1.0) / (2 * k + 1)));
    __m256d r = _mm256_mul_pd(a2, p);
    r = _mm256_add_pd(r, _mm256_and_pd(red, splat(kPiO4)));
    r = _mm256_blendv_pd(r, _mm256_sub_pd(splat(kPiO2), r), inv);
    return _mm256_or_pd(r, sign);
}

inline void sincos_pd(__m256d x, __m256d& s_out, __m256d& c_out) {
    const __m256d k = round_nearest(_mm256_mul_pd(x, splat(kTwoOPi)));
    __m256d r = _mm256_fnmadd_pd(k, splat(kPiO2Hi), x);
    r = _mm256_fnmadd_pd(k, splat(kPiO2Mid), r);
    r = _mm256_fnmadd_pd(k, splat(kPiO2Lo), r);
    const __m256d r2 = _mm256_mul_pd(r, r);

    // sin r = r * sum_j (-1)^j r^(2j) / (2j+1)!, j <= 8
    __m256d ps = splat(kInvFactorial[17]);
    for (int j = 7; j >= 0; --j)
        ps = _mm256_fmadd_pd(ps, r2, splat(((j % 2) ? -1.0 : 1.0) * kInvFactorial[2 * j + 1]));
    const __m256d s = _mm256_mul_pd(ps, r);
    // cos r = sum_j (-1)^j r^(2j) / (2j)!, j <= 9
    __m256d pc = splat(-kInvFactorial[18]);
    for (int j = 8; j >= 0; --j)
        pc = _mm256_fmadd_pd(pc, r2, splat(((j % 2) ? -1.0 : 1.0) * kInvFactorial[2 * j]));

    const __m256i q = _mm256_and_si256(to_int64(k), _mm256_set1_epi64x(3));
    const __m256d q1 = _mm256_castsi256_pd(_mm256_cmpeq_epi64(q, _mm256_set1_epi64x(1)));
    const __m256d q2 = _mm256_castsi256_pd(_mm256_cmpeq_epi64(q, _mm256_set1_epi64x(2)));
    const __m256d q3 = _mm256_castsi256_pd(_mm256_cmpeq_epi64(q, _mm256_set1_epi64x(3)));
    const __m256d swap = _mm256_or_pd(q1, q3);
    const __m256d sign_bit = splat(-0.0);
    __m256d so = _mm256_blendv_pd(s, pc, swap);
    __m256d co = _mm256_blendv_pd(pc, s, swap);
    so = _mm256_xor_pd(so, _mm256_and_pd(_mm256_or_pd(q2, q3), sign_bit));
    co = _mm256_xor_pd(co, _mm256_and_pd(_mm256_or_pd(q1, q2), sign_bit));
    s_out = so;
    c_out = co;
}

inline bool sincos_in_range(__m256d x) {
    const __m256d a = _mm256_andnot_pd(splat(-0.0), x);
    return _mm256_movemask_pd(_mm256_cmp_pd(a, splat(kSinCosLimit), _CMP_GT_OQ)) == 0;
}

inline void sincos_checked(__m256d x, __m256d& s, __m256d& c) {
    if (sincos_in_range(x)) {
        sincos_pd(x, s, c);
        return;
    }
    alignas(32) double xs[4], ss[4], cs[4];
    _mm256_store_pd(xs, x);
    for (int i = 0; i < 4; ++i) {
        ss[i] = std::sin(xs[i]);
        cs[i] = std::cos(xs[i]);
    }
    s = _mm256_load_pd(ss);
    c = _mm256_load_pd(cs);
}

inline __m256d ohmic_pd(const OhmicIntegrandParams& p, __m256d u) {
    const __m256d one = splat(1.0);
    const __m256d x = _mm256_mul_pd(splat(p.strong_cutoff), u);
    const __m256d r1 = _mm256_mul_pd(splat(2.0 * p.strong_coupling), log1p_pd(_mm256_mul_pd(x, x)));
    const __m256d i1 = _mm256_mul_pd(splat(4.0 * p.strong_coupling), atan_pd(x));

    const double ac2 = p.weak_cutoff * p.weak_cutoff;
    const __m256d y = _mm256_mul_pd(splat(p.weak_cutoff), u);
    const __m256d y2 = _mm256_mul_pd(y, y);
    const __m256d d = _mm256_add_pd(one, y2);
    const __m256d inv_d2 = _mm256_div_pd(one, _mm256_mul_pd(d, d));
    const __m256d r2 = _mm256_mul_pd(_mm256_mul_pd(splat(p.weak_coupling * ac2), _mm256_sub_pd(one, y2)), inv_d2);
    const __m256d i2 = _mm256_mul_pd(_mm256_mul_pd(splat(2.0 * p.weak_coupling * ac2), y), inv_d2);

    const __m256d theta = _mm256_fmsub_pd(splat(p.epsilon), u, i1);
    __m256d s, c;
    sincos_checked(theta, s, c);
    const __m256d tunnel = splat(0.25 * p.delta * p.delta);
    const __m256d bracket = _mm256_fmadd_pd(s, i2, _mm256_mul_pd(c, _mm256_add_pd(r2, tunnel)));
    return _mm256_mul_pd(exp_pd(_mm256_sub_pd(_mm256_setzero_pd(), r1)), bracket);
}

// Applies op to whole vectors, padding the tail with copies of the last input.
template <class Op>
inline void for_each_vector(const double* x, double* y, std::size_t n, Op op) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, op(_mm256_loadu_pd(x + i)));
    if (i < n) {
        alignas(32) double in[4], out[4];
        for (std::size_t j = 0; j < 4; ++j) in[j] = x[i + std::min(j, n - i - 1)];
        _mm256_store_pd(out, op(_mm256_load_pd(in)));
        for (std::size_t j = 0; i + j < n; ++j) y[i + j] = out[j];
    }
}

} // namespace

void ohmic_avx2(const OhmicIntegrandParams& p, const double* u, double* out, std::size_t n) {
    for_each_vector(u, out, n, [&p](__m256d v) { return ohmic_pd(p, v); });
}

void exp_avx2(const double* x, double* y, std::size_t n) {
    for_each_vector(x, y, n, [](__m256d v) { return exp_pd(v); });
}

void log1p_avx2(const double* x, double* y, std::size_t n) {
    for_each_vector(x, y, n, [](__m256d v) { return log1p_pd(v); });
}

void atan_avx2(const double* x, double* y, std::size_t n) {
    for_each_vector(x, y, n, [](__m256d v) { return atan_pd(v); });
}

void sincos_avx2(const double* x, double* s, double* c, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d sv, cv;
        sincos_checked(_mm256_loadu_pd(x + i), sv, cv);
        _mm256_storeu_pd(s + i, sv);
        _mm256_storeu_pd(c + i, cv);
    }
    for (; i < n; ++i) {
        alignas(32) double in[4] = {x[i], x[i], x[i], x[i]}, so[4], co[4];
        __m256d sv, cv;
        sincos_checked(_mm256_load_pd(in), sv, cv);
        _mm256_store_pd(so, sv);
        _mm256_store_pd(co, cv);
        s[i] = so[0];
        c[i] = co[0];
    }
}

#pragma GCC pop_options

bool avx2_compiled() noexcept { return true; }

#else // !QZENO_HAVE_X86

bool avx2_compiled() noexcept { return false; }
void ohmic_avx2(const OhmicIntegrandParams&, const double*, double*, std::size_t) {}
void exp_avx2(const double*, double*, std::size_t) {}
void log1p_avx2(const double*, double*, std::size_t) {}
void atan_avx2(const double*, double*, std::size_t) {}
void sincos_avx2(const double*, double*, double*, std::size_t) {}

#endif

} // namespace qzeno::simd::detail
