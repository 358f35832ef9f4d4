// AVX2 batch sin/cos and exp.  Standard construction: round to the nearest
// quadrant (resp. power of two), Cody-Waite two-part argument reduction with
// exact n*hi products, fdlibm minimax kernels on the reduced argument.
// Arguments past kMaxTrigArg / kMaxExpArg fall back to libm lane by lane;
// the quadrature never produces them but the CLI config space can.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace landauer::kernels {

namespace {

constexpr double kTwoOverPi = 6.36619772367581382433e-01;
// pi/2 = kPio2Hi + kPio2Lo; hi has 33 significant bits so n*hi is exact
// for |n| < 2^20.
constexpr double kPio2Hi = 1.57079632673412561417e+00;
constexpr double kPio2Lo = 6.07710050650619224932e-11;
constexpr double kPio2Lo2 = 2.02226624879595063154e-21;

constexpr double kS1 = -1.66666666666666324348e-01;
constexpr double kS2 = 8.33333333332248946124e-03;
constexpr double kS3 = -1.98412698298579493134e-04;
constexpr double kS4 = 2.75573137070700676789e-06;
constexpr double kS5 = -2.50507602534068634195e-08;
constexpr double kS6 = 1.58969099521155010221e-10;

constexpr double kC1 = 4.16666666666666019037e-02;
constexpr double kC2 = -1.38888888888741095749e-03;
constexpr double kC3 = 2.48015872894767294178e-05;
constexpr double kC4 = -2.75573143513906633035e-07;
constexpr double kC5 = 2.08757232129817482790e-09;
constexpr double kC6 = -1.13596475577881948265e-11;

constexpr double kMaxTrigArg = 1.0e5;

constexpr double kLog2E = 1.4426950408889634074;
constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;

constexpr double kExpP0 = 1.26177193074810590878e-4;
constexpr double kExpP1 = 3.02994407707441961300e-2;
constexpr double kExpP2 = 9.99999999999999999910e-1;
constexpr double kExpQ0 = 3.00198505138664455042e-6;
constexpr double kExpQ1 = 2.52448340349684104192e-3;
constexpr double kExpQ2 = 2.27265548208155028766e-1;
constexpr double kExpQ3 = 2.00000000000000000005e0;

constexpr double kMaxExpArg = 700.0;

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

// sin/cos of four lanes, |x| <= kMaxTrigArg and finite.
inline void sincos4(__m256d x, __m256d& out_s, __m256d& out_c) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);

  __m256d nd = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                               _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  // r = ((x - n*hi) - n*lo) - n*lo2
  __m256d r = _mm256_fnmadd_pd(nd, _mm256_set1_pd(kPio2Hi), x);
  __m256d w = _mm256_mul_pd(nd, _mm256_set1_pd(kPio2Lo));
  r = _mm256_sub_pd(r, w);
  r = _mm256_fnmadd_pd(nd, _mm256_set1_pd(kPio2Lo2), r);

  __m256d z = _mm256_mul_pd(r, r);

  __m256d ps = _mm256_set1_pd(kS6);
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(kS5));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(kS4));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(kS3));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(kS2));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(kS1));
  __m256d sr = _mm256_fmadd_pd(_mm256_mul_pd(r, z), ps, r);

  __m256d pc = _mm256_set1_pd(kC6);
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(kC5));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(kC4));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(kC3));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(kC2));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(kC1));
  __m256d hz = _mm256_mul_pd(half, z);
  __m256d cr =
      _mm256_add_pd(_mm256_sub_pd(one, hz), _mm256_mul_pd(_mm256_mul_pd(z, z), pc));

  // Quadrant logic: q = n mod 4.
  __m128i n32 = _mm256_cvtpd_epi32(nd);
  __m256i q = _mm256_cvtepi32_epi64(n32);
  __m256i bit0 = _mm256_and_si256(q, _mm256_set1_epi64x(1));
  __m256i bit1 = _mm256_and_si256(q, _mm256_set1_epi64x(2));
  __m256i bit1c = _mm256_and_si256(_mm256_add_epi64(q, _mm256_set1_epi64x(1)),
                                   _mm256_set1_epi64x(2));

  __m256d swap = _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(bit0, _mm256_set1_epi64x(1)));
  __m256d neg_s = _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(bit1, _mm256_set1_epi64x(2)));
  __m256d neg_c = _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(bit1c, _mm256_set1_epi64x(2)));

  __m256d sv = _mm256_blendv_pd(sr, cr, swap);
  __m256d cv = _mm256_blendv_pd(cr, sr, swap);

  const __m256d signbit = _mm256_set1_pd(-0.0);
  sv = _mm256_xor_pd(sv, _mm256_and_pd(neg_s, signbit));
  cv = _mm256_xor_pd(cv, _mm256_and_pd(neg_c, signbit));

  out_s = sv;
  out_c = cv;
}

// exp of four lanes, |x| <= kMaxExpArg.
inline __m256d exp4(__m256d x) {
  const __m256d one = _mm256_set1_pd(1.0);

  __m256d nd = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kLog2E)),
                               _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(nd, _mm256_set1_pd(kLn2Hi), x);
  r = _mm256_fnmadd_pd(nd, _mm256_set1_pd(kLn2Lo), r);

  // Cephes rational: exp(r) = 1 + 2r*P(r^2) / (Q(r^2) - r*P(r^2))
  __m256d z = _mm256_mul_pd(r, r);
  __m256d p = _mm256_set1_pd(kExpP0);
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(kExpP1));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(kExpP2));
  p = _mm256_mul_pd(p, r);
  __m256d q = _mm256_set1_pd(kExpQ0);
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(kExpQ1));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(kExpQ2));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(kExpQ3));
  __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, one);

  // scale by 2^n
  __m128i n32 = _mm256_cvtpd_epi32(nd);
  __m256i n64 = _mm256_cvtepi32_epi64(n32);
  __m256i bits = _mm256_slli_epi64(
      _mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(e, _mm256_castsi256_pd(bits));
}

}  // namespace

void sincos_avx2(const double* x, double* s, double* c, std::size_t n) {
  const __m256d maxarg = _mm256_set1_pd(kMaxTrigArg);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d xv = _mm256_loadu_pd(x + i);
    __m256d ok = _mm256_cmp_pd(abs_pd(xv), maxarg, _CMP_LE_OQ);
    if (_mm256_movemask_pd(ok) != 0xf) {
      for (int k = 0; k < 4; ++k) {
        s[i + k] = std::sin(x[i + k]);
        c[i + k] = std::cos(x[i + k]);
      }
      continue;
    }
    __m256d sv, cv;
    sincos4(xv, sv, cv);
    _mm256_storeu_pd(s + i, sv);
    _mm256_storeu_pd(c + i, cv);
  }
  for (; i < n; ++i) {
    s[i] = std::sin(x[i]);
    c[i] = std::cos(x[i]);
  }
}

void exp_avx2(const double* x, double* y, std::size_t n) {
  const __m256d maxarg = _mm256_set1_pd(kMaxExpArg);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d xv = _mm256_loadu_pd(x + i);
    __m256d ok = _mm256_cmp_pd(abs_pd(xv), maxarg, _CMP_LE_OQ);
    if (_mm256_movemask_pd(ok) != 0xf) {
      for (int k = 0; k < 4; ++k) y[i + k] = std::exp(x[i + k]);
      continue;
    }
    _mm256_storeu_pd(y + i, exp4(xv));
  }
  for (; i < n; ++i) y[i] = std::exp(x[i]);
}

}  // namespace landauer::kernels

#endif  // x86_64
