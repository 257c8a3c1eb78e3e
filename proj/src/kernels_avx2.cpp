#include <immintrin.h>

#include <cstddef>
#include <cstring>
#include <limits>

#include "quenchbat/kernels.hpp"

// Compiled with -mavx2 -mfma; nothing here executes unless avx2_ops() saw
// the CPU support both.

namespace quenchbat::kernels::detail {
namespace {

constexpr double kInertTol = 1e-150;

inline __m256d set1(double v) { return _mm256_set1_pd(v); }

inline __m256d abs4(__m256d x) { return _mm256_andnot_pd(set1(-0.0), x); }

inline __m256d neg4(__m256d x) { return _mm256_xor_pd(x, set1(-0.0)); }

inline bool any_lane(__m256d mask) { return _mm256_movemask_pd(mask) != 0; }

// e^x by Cephes' rational form: reduce x = n log 2 + r with the log 2
// split in two parts, evaluate e^r = 1 + 2 r P(r^2) / (Q(r^2) - r P(r^2)),
// scale by 2^n in two factors so the exponent field never saturates.
// Overflow clamps to +inf above 709.78..., underflow to 0 below -745.13...
__m256d exp4(__m256d x) {
  const __m256d max_x = set1(709.782712893383996732);
  const __m256d min_x = set1(-745.13321910194110842);

  __m256d over = _mm256_cmp_pd(x, max_x, _CMP_GT_OQ);
  __m256d under = _mm256_cmp_pd(x, min_x, _CMP_LT_OQ);

  __m256d n = _mm256_round_pd(_mm256_mul_pd(x, set1(1.4426950408889634073599)),
                              _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, set1(6.93145751953125e-1), x);
  r = _mm256_fnmadd_pd(n, set1(1.42860682030941723212e-6), r);
  __m256d rr = _mm256_mul_pd(r, r);

  __m256d p = set1(1.26177193074810590878e-4);
  p = _mm256_fmadd_pd(p, rr, set1(3.02994407707441961300e-2));
  p = _mm256_fmadd_pd(p, rr, set1(9.99999999999999999910e-1));
  __m256d px = _mm256_mul_pd(p, r);

  __m256d q = set1(3.00198505138664455042e-6);
  q = _mm256_fmadd_pd(q, rr, set1(2.52448340349684104192e-3));
  q = _mm256_fmadd_pd(q, rr, set1(2.27265548208155028766e-1));
  q = _mm256_fmadd_pd(q, rr, set1(2.0));

  __m256d e = _mm256_add_pd(
      set1(1.0), _mm256_div_pd(_mm256_mul_pd(set1(2.0), px), _mm256_sub_pd(q, px)));

  __m128i j = _mm256_cvtpd_epi32(n);
  __m128i j1 = _mm_srai_epi32(j, 1);
  __m128i j2 = _mm_sub_epi32(j, j1);
  const __m256i bias = _mm256_set1_epi64x(1023);
  __m256d f1 = _mm256_castsi256_pd(
      _mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(j1), bias), 52));
  __m256d f2 = _mm256_castsi256_pd(
      _mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(j2), bias), 52));
  e = _mm256_mul_pd(_mm256_mul_pd(e, f1), f2);

  e = _mm256_blendv_pd(e, set1(std::numeric_limits<double>::infinity()), over);
  e = _mm256_blendv_pd(e, _mm256_setzero_pd(), under);
  return e;
}

// sin x by Cephes' octant decomposition: y = floor(|x| 4/pi) evened up,
// the octant selects sin/cos polynomial and sign, and the reduced argument
// comes from a three-part pi/4. Callers keep |x| <= 1e9, where the
// reduction stays well inside exact double range.
__m256d sin4(__m256d x) {
  const __m256d sign_bit = set1(-0.0);
  __m256d sign = _mm256_and_pd(x, sign_bit);
  __m256d ax = _mm256_andnot_pd(sign_bit, x);

  __m256d y = _mm256_floor_pd(_mm256_mul_pd(ax, set1(1.27323954473516268615)));
  __m256d y8 = _mm256_fnmadd_pd(_mm256_floor_pd(_mm256_mul_pd(y, set1(0.125))), set1(8.0), y);
  __m256d odd = _mm256_fnmadd_pd(_mm256_floor_pd(_mm256_mul_pd(y8, set1(0.5))), set1(2.0), y8);
  y = _mm256_add_pd(y, odd);
  y8 = _mm256_add_pd(y8, odd);
  __m256d wrap =
      _mm256_sub_pd(y8, _mm256_and_pd(_mm256_cmp_pd(y8, set1(7.5), _CMP_GT_OQ), set1(8.0)));

  __m256d cos_sel = _mm256_or_pd(_mm256_cmp_pd(wrap, set1(2.0), _CMP_EQ_OQ),
                                 _mm256_cmp_pd(wrap, set1(6.0), _CMP_EQ_OQ));
  __m256d flip = _mm256_or_pd(_mm256_cmp_pd(wrap, set1(4.0), _CMP_EQ_OQ),
                              _mm256_cmp_pd(wrap, set1(6.0), _CMP_EQ_OQ));

  __m256d z = _mm256_fnmadd_pd(y, set1(7.85398125648498535156e-1), ax);
  z = _mm256_fnmadd_pd(y, set1(3.77489470793079817668e-8), z);
  z = _mm256_fnmadd_pd(y, set1(2.69515142907905952645e-15), z);
  __m256d zz = _mm256_mul_pd(z, z);

  __m256d s = set1(1.58962301576546568060e-10);
  s = _mm256_fmadd_pd(s, zz, set1(-2.50507477628578072866e-8));
  s = _mm256_fmadd_pd(s, zz, set1(2.75573136213857245213e-6));
  s = _mm256_fmadd_pd(s, zz, set1(-1.98412698295895385996e-4));
  s = _mm256_fmadd_pd(s, zz, set1(8.33333333332211858878e-3));
  s = _mm256_fmadd_pd(s, zz, set1(-1.66666666666666307295e-1));
  s = _mm256_fmadd_pd(_mm256_mul_pd(s, zz), z, z);

  __m256d c = set1(-1.13585365213876817300e-11);
  c = _mm256_fmadd_pd(c, zz, set1(2.08757008419747316778e-9));
  c = _mm256_fmadd_pd(c, zz, set1(-2.75573141792967388112e-7));
  c = _mm256_fmadd_pd(c, zz, set1(2.48015872888517179954e-5));
  c = _mm256_fmadd_pd(c, zz, set1(-1.38888888888730564116e-3));
  c = _mm256_fmadd_pd(c, zz, set1(4.16666666666665929218e-2));
  c = _mm256_mul_pd(c, _mm256_mul_pd(zz, zz));
  c = _mm256_fnmadd_pd(zz, set1(0.5), c);
  c = _mm256_add_pd(c, set1(1.0));

  __m256d r = _mm256_blendv_pd(s, c, cos_sel);
  r = _mm256_xor_pd(r, _mm256_and_pd(flip, sign_bit));
  r = _mm256_xor_pd(r, sign);
  return r;
}

// Finite-beta thermal weight, same two shifted-exponent branches as the
// scalar reference. All active-branch exponents are <= 0; inactive lanes
// may hit inf but are blended away.
__m256d thermal_weight4(__m256d a, __m256d b) {
  __m256d ab = abs4(b);
  __m256d em = _mm256_sub_pd(exp4(_mm256_mul_pd(a, set1(-2.0))), set1(1.0));

  __m256d den1 = _mm256_add_pd(
      _mm256_add_pd(set1(2.0), em),
      _mm256_add_pd(exp4(_mm256_sub_pd(b, a)), exp4(_mm256_sub_pd(neg4(b), a))));
  __m256d r1 = _mm256_div_pd(neg4(em), den1);

  __m256d eamb = exp4(_mm256_sub_pd(a, ab));
  __m256d num2 = _mm256_mul_pd(neg4(eamb), em);
  __m256d den2 = _mm256_add_pd(
      _mm256_add_pd(eamb, exp4(_mm256_sub_pd(neg4(a), ab))),
      _mm256_add_pd(set1(1.0), exp4(_mm256_mul_pd(ab, set1(-2.0)))));
  __m256d r2 = _mm256_div_pd(num2, den2);

  return _mm256_blendv_pd(r2, r1, _mm256_cmp_pd(a, ab, _CMP_GE_OQ));
}

// Zero-temperature occupation-step weight: 1 below mu, 0 above, 1/2 at mu.
__m256d thermal_weight4_zero(__m256d gap_half, __m256d d0, double mu) {
  const __m256d muv = set1(mu);
  auto step = [&](__m256d e) {
    __m256d lt = _mm256_and_pd(_mm256_cmp_pd(e, muv, _CMP_LT_OQ), set1(1.0));
    __m256d eq = _mm256_and_pd(_mm256_cmp_pd(e, muv, _CMP_EQ_OQ), set1(0.5));
    return _mm256_add_pd(lt, eq);
  };
  return _mm256_sub_pd(step(_mm256_sub_pd(d0, gap_half)), step(_mm256_add_pd(d0, gap_half)));
}

void sc_mode_terms_avx2(const double* xa, const double* za, const double* xb, const double* zb,
                        std::size_t n, ThermalParams thermal, double* omega, double* amp) {
  const KernelOps& ref = scalar_kernels();
  const __m256d tol = set1(kInertTol);
  const __m256d inf = set1(std::numeric_limits<double>::infinity());
  std::size_t main = n - n % 4;
  for (std::size_t i = 0; i < main; i += 4) {
    __m256d xav = _mm256_loadu_pd(xa + i);
    __m256d zav = _mm256_loadu_pd(za + i);
    __m256d xbv = _mm256_loadu_pd(xb + i);
    __m256d zbv = _mm256_loadu_pd(zb + i);
    __m256d eps = _mm256_sqrt_pd(_mm256_fmadd_pd(xav, xav, _mm256_mul_pd(zav, zav)));
    __m256d om = _mm256_sqrt_pd(_mm256_fmadd_pd(xbv, xbv, _mm256_mul_pd(zbv, zbv)));
    _mm256_storeu_pd(omega + i, om);

    __m256d th;
    if (thermal.beta_inf) {
      th = set1(1.0);
    } else {
      __m256d a = _mm256_mul_pd(set1(thermal.beta), eps);
      if (any_lane(_mm256_cmp_pd(a, inf, _CMP_GE_OQ))) {
        ref.sc_mode_terms(xa + i, za + i, xb + i, zb + i, 4, thermal, omega + i, amp + i);
        continue;
      }
      __m256d em = _mm256_sub_pd(exp4(_mm256_mul_pd(a, set1(-2.0))), set1(1.0));
      __m256d den = _mm256_add_pd(_mm256_add_pd(set1(2.0), em),
                                  _mm256_mul_pd(set1(2.0), exp4(neg4(a))));
      th = _mm256_div_pd(neg4(em), den);
    }

    // Plain mul/sub, not fmsub: the cross must vanish exactly when the
    // phases coincide, and this matches the scalar reference bitwise.
    __m256d cross = _mm256_sub_pd(_mm256_mul_pd(xav, zbv), _mm256_mul_pd(zav, xbv));
    __m256d ampv = _mm256_div_pd(
        _mm256_mul_pd(_mm256_div_pd(_mm256_mul_pd(cross, cross), _mm256_mul_pd(om, om)), th),
        _mm256_mul_pd(set1(2.0), eps));
    __m256d inert = _mm256_or_pd(_mm256_cmp_pd(eps, tol, _CMP_LT_OQ),
                                 _mm256_cmp_pd(om, tol, _CMP_LT_OQ));
    _mm256_storeu_pd(amp + i, _mm256_andnot_pd(inert, ampv));
  }
  if (main < n) {
    ref.sc_mode_terms(xa + main, za + main, xb + main, zb + main, n - main, thermal,
                      omega + main, amp + main);
  }
}

void nonsc_mode_terms_avx2(const double* d0a, const double* d1a, const double* d2a,
                           const double* d3a, const double* d0b, const double* d1b,
                           const double* d2b, const double* d3b, std::size_t n,
                           ThermalParams thermal, double* omega, double* amp) {
  const KernelOps& ref = scalar_kernels();
  const __m256d tol = set1(kInertTol);
  const __m256d inf = set1(std::numeric_limits<double>::infinity());
  std::size_t main = n - n % 4;
  for (std::size_t i = 0; i < main; i += 4) {
    __m256d v1a = _mm256_loadu_pd(d1a + i);
    __m256d v2a = _mm256_loadu_pd(d2a + i);
    __m256d v3a = _mm256_loadu_pd(d3a + i);
    __m256d v1b = _mm256_loadu_pd(d1b + i);
    __m256d v2b = _mm256_loadu_pd(d2b + i);
    __m256d v3b = _mm256_loadu_pd(d3b + i);
    __m256d v0a = _mm256_loadu_pd(d0a + i);

    __m256d ra = _mm256_sqrt_pd(
        _mm256_fmadd_pd(v1a, v1a, _mm256_fmadd_pd(v2a, v2a, _mm256_mul_pd(v3a, v3a))));
    __m256d rb = _mm256_sqrt_pd(
        _mm256_fmadd_pd(v1b, v1b, _mm256_fmadd_pd(v2b, v2b, _mm256_mul_pd(v3b, v3b))));
    _mm256_storeu_pd(omega + i, rb);

    __m256d ft;
    if (thermal.beta_inf) {
      ft = thermal_weight4_zero(ra, v0a, thermal.mu);
    } else {
      __m256d a = _mm256_mul_pd(set1(thermal.beta), ra);
      __m256d b = _mm256_mul_pd(set1(thermal.beta), _mm256_sub_pd(v0a, set1(thermal.mu)));
      if (any_lane(_mm256_or_pd(_mm256_cmp_pd(a, inf, _CMP_GE_OQ),
                                _mm256_cmp_pd(abs4(b), inf, _CMP_GE_OQ)))) {
        ref.nonsc_mode_terms(d0a + i, d1a + i, d2a + i, d3a + i, d0b + i, d1b + i, d2b + i,
                             d3b + i, 4, thermal, omega + i, amp + i);
        continue;
      }
      ft = thermal_weight4(a, b);
    }

    // Plain mul/sub, not fmsub: each component must vanish exactly when the
    // phases coincide, and this matches the scalar reference bitwise.
    __m256d cx = _mm256_sub_pd(_mm256_mul_pd(v2a, v3b), _mm256_mul_pd(v3a, v2b));
    __m256d cy = _mm256_sub_pd(_mm256_mul_pd(v3a, v1b), _mm256_mul_pd(v1a, v3b));
    __m256d cz = _mm256_sub_pd(_mm256_mul_pd(v1a, v2b), _mm256_mul_pd(v2a, v1b));
    __m256d f0 = _mm256_fmadd_pd(cx, cx, _mm256_fmadd_pd(cy, cy, _mm256_mul_pd(cz, cz)));

    __m256d ampv = _mm256_div_pd(
        _mm256_mul_pd(_mm256_div_pd(f0, _mm256_mul_pd(rb, rb)), ft), ra);
    __m256d inert = _mm256_or_pd(_mm256_cmp_pd(ra, tol, _CMP_LT_OQ),
                                 _mm256_cmp_pd(rb, tol, _CMP_LT_OQ));
    _mm256_storeu_pd(amp + i, _mm256_andnot_pd(inert, ampv));
  }
  if (main < n) {
    ref.nonsc_mode_terms(d0a + main, d1a + main, d2a + main, d3a + main, d0b + main,
                         d1b + main, d2b + main, d3b + main, n - main, thermal, omega + main,
                         amp + main);
  }
}

void oscillation_avx2(const double* omega, const double* amp, std::size_t n, double tau,
                      bool long_time_average, double* out) {
  if (long_time_average) {
    std::memcpy(out, amp, n * sizeof(double));
    return;
  }
  const KernelOps& ref = scalar_kernels();
  const __m256d big = set1(1e9);
  const __m256d tauv = set1(tau);
  std::size_t main = n - n % 4;
  for (std::size_t i = 0; i < main; i += 4) {
    __m256d arg = _mm256_mul_pd(_mm256_loadu_pd(omega + i), tauv);
    if (any_lane(_mm256_cmp_pd(abs4(arg), big, _CMP_GT_OQ))) {
      ref.oscillation(omega + i, amp + i, 4, tau, false, out + i);
      continue;
    }
    __m256d s = sin4(arg);
    __m256d res = _mm256_mul_pd(_mm256_loadu_pd(amp + i),
                                _mm256_mul_pd(set1(2.0), _mm256_mul_pd(s, s)));
    _mm256_storeu_pd(out + i, res);
  }
  if (main < n) {
    ref.oscillation(omega + main, amp + main, n - main, tau, false, out + main);
  }
}

// Probe paths pad the tail so every element goes through the vector code.
void exp_array(const double* x, std::size_t n, double* out) {
  std::size_t main = n - n % 4;
  for (std::size_t i = 0; i < main; i += 4) {
    _mm256_storeu_pd(out + i, exp4(_mm256_loadu_pd(x + i)));
  }
  if (main < n) {
    double buf[4] = {0.0, 0.0, 0.0, 0.0};
    double res[4];
    std::memcpy(buf, x + main, (n - main) * sizeof(double));
    _mm256_storeu_pd(res, exp4(_mm256_loadu_pd(buf)));
    std::memcpy(out + main, res, (n - main) * sizeof(double));
  }
}

void sin_array(const double* x, std::size_t n, double* out) {
  std::size_t main = n - n % 4;
  for (std::size_t i = 0; i < main; i += 4) {
    _mm256_storeu_pd(out + i, sin4(_mm256_loadu_pd(x + i)));
  }
  if (main < n) {
    double buf[4] = {0.0, 0.0, 0.0, 0.0};
    double res[4];
    std::memcpy(buf, x + main, (n - main) * sizeof(double));
    _mm256_storeu_pd(res, sin4(_mm256_loadu_pd(buf)));
    std::memcpy(out + main, res, (n - main) * sizeof(double));
  }
}

}  // namespace

const KernelOps* avx2_ops() {
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const KernelOps ops{"avx2", &sc_mode_terms_avx2, &nonsc_mode_terms_avx2,
                             &oscillation_avx2};
  return supported ? &ops : nullptr;
}

const VecMathProbe* avx2_probe() {
  static const VecMathProbe probe{&exp_array, &sin_array};
  return avx2_ops() ? &probe : nullptr;
}

}  // namespace quenchbat::kernels::detail
