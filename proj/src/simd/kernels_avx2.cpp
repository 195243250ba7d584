// AVX2 variants.  Vector sincos/log/exp are built here from classic
// kernel-polynomial coefficients (fdlibm family) plus fma-based Cody-Waite
// reduction; accuracy is a few ulps, which the equivalence tests pin down
// against the scalar reference.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "kernels_common.hpp"
#include "resonance/numeric.hpp"

namespace resonance::simd::detail {

namespace {

inline __m256d vset(double v) { return _mm256_set1_pd(v); }

inline __m256d vround(__m256d x) {
    return _mm256_round_pd(x, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
}

inline __m256d vabs(__m256d x) {
    return _mm256_andnot_pd(vset(-0.0), x);
}

// signed i64 lanes from small-magnitude doubles (|x| < 2^31)
inline __m256i small_to_i64(__m256d x) {
    return _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(x));
}

// sin and cos on [-pi/4, pi/4] after quadrant split; input may overhang the
// quadrant boundary by ~1e-3 which the polynomials absorb.
inline void vsincos(__m256d r, __m256d& s_out, __m256d& c_out) {
    const __m256d kq = vround(_mm256_mul_pd(r, vset(kTwoOverPi)));
    __m256d u = _mm256_fnmadd_pd(kq, vset(kPiO2Hi), r);
    u = _mm256_fnmadd_pd(kq, vset(kPiO2Lo), u);
    const __m256d u2 = _mm256_mul_pd(u, u);

    __m256d ps = vset(1.58969099521155010221e-10);
    ps = _mm256_fmadd_pd(ps, u2, vset(-2.50507602534068634195e-08));
    ps = _mm256_fmadd_pd(ps, u2, vset(2.75573137070700676789e-06));
    ps = _mm256_fmadd_pd(ps, u2, vset(-1.98412698298579493134e-04));
    ps = _mm256_fmadd_pd(ps, u2, vset(8.33333333332248946124e-03));
    ps = _mm256_fmadd_pd(ps, u2, vset(-1.66666666666666324348e-01));
    const __m256d su = _mm256_fmadd_pd(_mm256_mul_pd(u, u2), ps, u);

    __m256d pc = vset(-1.13596475577881948265e-11);
    pc = _mm256_fmadd_pd(pc, u2, vset(2.08757232129817482790e-09));
    pc = _mm256_fmadd_pd(pc, u2, vset(-2.75573143513906633035e-07));
    pc = _mm256_fmadd_pd(pc, u2, vset(2.48015872894767294178e-05));
    pc = _mm256_fmadd_pd(pc, u2, vset(-1.38888888888741095749e-03));
    pc = _mm256_fmadd_pd(pc, u2, vset(4.16666666666666019037e-02));
    __m256d cu = _mm256_fmadd_pd(u2, vset(-0.5), vset(1.0));
    cu = _mm256_fmadd_pd(_mm256_mul_pd(u2, u2), pc, cu);

    const __m256i iq = small_to_i64(kq);
    const __m256i one = _mm256_set1_epi64x(1);
    const __m256d swap = _mm256_castsi256_pd(
        _mm256_cmpeq_epi64(_mm256_and_si256(iq, one), one));
    const __m256d s1 = _mm256_blendv_pd(su, cu, swap);
    const __m256d c1 = _mm256_blendv_pd(cu, su, swap);
    // sign of sin flips on quadrants 2,3; cos on 1,2  (bit1 of q, q+1)
    const __m256i two = _mm256_set1_epi64x(2);
    const __m256d sflip = _mm256_castsi256_pd(
        _mm256_slli_epi64(_mm256_and_si256(iq, two), 62));
    const __m256d cflip = _mm256_castsi256_pd(
        _mm256_slli_epi64(_mm256_and_si256(_mm256_add_epi64(iq, one), two), 62));
    s_out = _mm256_xor_pd(s1, sflip);
    c_out = _mm256_xor_pd(c1, cflip);
}

// natural log of normal positive inputs
inline __m256d vlog(__m256d x) {
    const __m256i xi = _mm256_castpd_si256(x);
    const __m256i biased = _mm256_srli_epi64(xi, 52);
    // exponent as double via the 2^52 bias trick (biased is in [1, 2046])
    const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
    __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(biased, magic)),
                              _mm256_castsi256_pd(magic));
    e = _mm256_sub_pd(e, vset(1023.0));

    const __m256i mant_mask = _mm256_set1_epi64x(0x000fffffffffffffLL);
    const __m256i one_bits = _mm256_set1_epi64x(0x3ff0000000000000LL);
    __m256d m = _mm256_castsi256_pd(
        _mm256_or_si256(_mm256_and_si256(xi, mant_mask), one_bits));
    const __m256d gt = _mm256_cmp_pd(m, vset(1.4142135623730951), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, vset(0.5)), gt);
    e = _mm256_add_pd(e, _mm256_and_pd(gt, vset(1.0)));

    const __m256d onev = vset(1.0);
    const __m256d z = _mm256_div_pd(_mm256_sub_pd(m, onev), _mm256_add_pd(m, onev));
    const __m256d z2 = _mm256_mul_pd(z, z);
    __m256d p = vset(1.0 / 19.0);
    p = _mm256_fmadd_pd(p, z2, vset(1.0 / 17.0));
    p = _mm256_fmadd_pd(p, z2, vset(1.0 / 15.0));
    p = _mm256_fmadd_pd(p, z2, vset(1.0 / 13.0));
    p = _mm256_fmadd_pd(p, z2, vset(1.0 / 11.0));
    p = _mm256_fmadd_pd(p, z2, vset(1.0 / 9.0));
    p = _mm256_fmadd_pd(p, z2, vset(1.0 / 7.0));
    p = _mm256_fmadd_pd(p, z2, vset(1.0 / 5.0));
    p = _mm256_fmadd_pd(p, z2, vset(1.0 / 3.0));
    p = _mm256_fmadd_pd(p, z2, onev);
    const __m256d logm = _mm256_mul_pd(_mm256_add_pd(z, z), p);
    __m256d r = _mm256_fmadd_pd(e, vset(kLn2Lo), logm);
    return _mm256_fmadd_pd(e, vset(kLn2Hi), r);
}

// e^w for w in [kExpPrune, 50]; callers mask anything outside
inline __m256d vexp(__m256d w) {
    const __m256d k = vround(_mm256_mul_pd(w, vset(kLog2E)));
    __m256d u = _mm256_fnmadd_pd(k, vset(kLn2Hi), w);
    u = _mm256_fnmadd_pd(k, vset(kLn2Lo), u);
    __m256d p = vset(1.0 / 6227020800.0);       // 1/13!
    p = _mm256_fmadd_pd(p, u, vset(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, u, vset(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, u, vset(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, u, vset(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, u, vset(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, u, vset(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, u, vset(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, u, vset(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, u, vset(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, u, vset(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, u, vset(0.5));
    p = _mm256_fmadd_pd(p, u, vset(1.0));
    p = _mm256_fmadd_pd(p, u, vset(1.0));
    // 2^k via exponent field; k >= -996 after pruning so no denormals
    const __m256i ki = small_to_i64(k);
    const __m256i bits = _mm256_slli_epi64(
        _mm256_add_epi64(ki, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
}

inline void vneumaier(__m256d& sum, __m256d& comp, __m256d x) {
    const __m256d t = _mm256_add_pd(sum, x);
    const __m256d big = _mm256_cmp_pd(vabs(sum), vabs(x), _CMP_GE_OQ);
    const __m256d a = _mm256_blendv_pd(x, sum, big);
    const __m256d b = _mm256_blendv_pd(sum, x, big);
    comp = _mm256_add_pd(comp, _mm256_add_pd(_mm256_sub_pd(a, t), b));
    sum = t;
}

// fixed-order lane merge so results do not depend on anything but the input
inline double merge_lanes(__m256d sum, __m256d comp) {
    alignas(32) double s[4], c[4];
    _mm256_store_pd(s, sum);
    _mm256_store_pd(c, comp);
    NeumaierSum m;
    for (int l = 0; l < 4; ++l) m.add(s[l]);
    for (int l = 0; l < 4; ++l) m.comp += c[l];
    return m.value();
}

}  // namespace

void grid_avx2(const double* q, const double* lp, std::size_t np,
               double t0, double dt, double* out, std::size_t n) {
    constexpr std::size_t kChunk = 1024;       // grid points per pass
    constexpr std::size_t kVecs = kChunk / 4;
    constexpr std::size_t kPrimeBlock = 8;     // factors folded per vlog

    // rotation per 4 grid steps, fixed per prime
    std::vector<double> stepc(np), steps(np);
    for (std::size_t i = 0; i < np; ++i) {
        double d = 4.0 * dt * lp[i];
        stepc[i] = std::cos(d);
        steps[i] = std::sin(d);
    }

    alignas(32) double tmp[4];
    __m256d acc[kVecs], pf[kVecs];

    for (std::size_t base = 0; base < n; base += kChunk) {
        const std::size_t cnt = n - base < kChunk ? n - base : kChunk;
        const std::size_t nv = (cnt + 3) / 4;
        for (std::size_t v = 0; v < nv; ++v) acc[v] = _mm256_setzero_pd();

        for (std::size_t ib = 0; ib < np; ib += kPrimeBlock) {
            const std::size_t ie = ib + kPrimeBlock < np ? ib + kPrimeBlock : np;
            for (std::size_t v = 0; v < nv; ++v) pf[v] = vset(1.0);
            for (std::size_t i = ib; i < ie; ++i) {
                alignas(32) double c0[4], s0[4];
                for (int l = 0; l < 4; ++l) {
                    double t = t0 + static_cast<double>(base + static_cast<std::size_t>(l)) * dt;
                    double th = t * lp[i];
                    c0[l] = std::cos(th);
                    s0[l] = std::sin(th);
                }
                __m256d c = _mm256_load_pd(c0);
                __m256d s = _mm256_load_pd(s0);
                const __m256d C = vset(stepc[i]);
                const __m256d S = vset(steps[i]);
                const double omq = 1.0 - q[i];
                const __m256d fbase = vset(omq * omq);
                const __m256d twoq = vset(2.0 * q[i]);
                const __m256d onev = vset(1.0);
                for (std::size_t v = 0; v < nv; ++v) {
                    const __m256d f =
                        _mm256_fmadd_pd(twoq, _mm256_sub_pd(onev, c), fbase);
                    pf[v] = _mm256_mul_pd(pf[v], f);
                    const __m256d cn =
                        _mm256_fnmadd_pd(s, S, _mm256_mul_pd(c, C));
                    s = _mm256_fmadd_pd(s, C, _mm256_mul_pd(c, S));
                    c = cn;
                }
            }
            for (std::size_t v = 0; v < nv; ++v)
                acc[v] = _mm256_add_pd(acc[v], vlog(pf[v]));
        }

        const __m256d mhalf = vset(-0.5);
        for (std::size_t v = 0; v < nv; ++v) {
            const __m256d o = _mm256_mul_pd(mhalf, acc[v]);
            const std::size_t j = base + 4 * v;
            if (j + 4 <= n) {
                _mm256_storeu_pd(out + j, o);
            } else {
                _mm256_store_pd(tmp, o);
                for (std::size_t l = 0; j + l < n; ++l) out[j + l] = tmp[l];
            }
        }
    }
}

double gauss_avx2(const double* coef, const double* x, std::size_t n, double inv4l2) {
    __m256d sum = _mm256_setzero_pd();
    __m256d comp = _mm256_setzero_pd();
    const __m256d vi = vset(inv4l2);
    const __m256d prune = vset(kExpPrune);
    const __m256d sign = vset(-0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        // matches the scalar -(x*x)*inv4l2 rounding exactly
        __m256d w = _mm256_xor_pd(_mm256_mul_pd(_mm256_mul_pd(xv, xv), vi), sign);
        const __m256d keep = _mm256_cmp_pd(w, prune, _CMP_GT_OQ);
        w = _mm256_blendv_pd(_mm256_setzero_pd(), w, keep);
        __m256d term = _mm256_mul_pd(_mm256_loadu_pd(coef + i), vexp(w));
        term = _mm256_and_pd(term, keep);
        vneumaier(sum, comp, term);
    }
    NeumaierSum total;
    total.add(merge_lanes(sum, comp));
    if (i < n) total.add(gauss_scalar(coef + i, x + i, n - i, inv4l2));
    return total.value();
}

std::complex<double> dirichlet_avx2(double t, const double* coef,
                                    const double* ln_hi, const double* ln_lo,
                                    std::size_t n) {
    __m256d sre = _mm256_setzero_pd(), cre = _mm256_setzero_pd();
    __m256d sim = _mm256_setzero_pd(), cim = _mm256_setzero_pd();
    const __m256d vt = vset(t);
    const __m256d inv2pi = vset(kInvTwoPi);
    const __m256d p1 = vset(kTwoPiP1), p2 = vset(kTwoPiP2), p3 = vset(kTwoPiP3);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d hi = _mm256_loadu_pd(ln_hi + i);
        const __m256d lo = _mm256_loadu_pd(ln_lo + i);
        const __m256d cf = _mm256_loadu_pd(coef + i);
        const __m256d p = _mm256_mul_pd(vt, hi);
        const __m256d perr = _mm256_fmsub_pd(vt, hi, p);
        const __m256d l = _mm256_fmadd_pd(vt, lo, perr);
        const __m256d k = vround(_mm256_mul_pd(p, inv2pi));
        __m256d r = _mm256_fnmadd_pd(k, p1, p);
        r = _mm256_add_pd(r, l);
        r = _mm256_fnmadd_pd(k, p2, r);
        r = _mm256_fnmadd_pd(k, p3, r);
        __m256d s, c;
        vsincos(r, s, c);
        vneumaier(sre, cre, _mm256_mul_pd(cf, c));
        vneumaier(sim, cim, _mm256_xor_pd(_mm256_mul_pd(cf, s), vset(-0.0)));
    }
    NeumaierSum re, im;
    re.add(merge_lanes(sre, cre));
    im.add(merge_lanes(sim, cim));
    if (i < n) {
        std::complex<double> tail = dirichlet_scalar(t, coef + i, ln_hi + i, ln_lo + i, n - i);
        re.add(tail.real());
        im.add(tail.imag());
    }
    return {re.value(), im.value()};
}

}  // namespace resonance::simd::detail

#endif  // x86_64
