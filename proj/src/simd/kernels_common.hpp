#pragma once

// Shared constants and the extended-precision phase reduction used by both
// kernel variants.  Keeping the reduction identical on the two paths means
// equivalence tests compare only the transcendental cores and sum order.

#include <cmath>
#include <complex>
#include <cstddef>

namespace resonance::simd::detail {

// 2*pi split so that fma-based Cody-Waite reduction stays exact for
// quotients up to ~2^52 (heights far beyond the supported zeta range).
inline constexpr double kTwoPiP1 = 0x1.921fb54442d18p+2;
inline constexpr double kTwoPiP2 = 0x1.1a62633145c07p-52;
inline constexpr double kTwoPiP3 = -0x1.f1976b7ed8fbcp-108;
inline constexpr double kInvTwoPi = 0x1.45f306dc9c883p-3;

inline constexpr double kPiO2Hi = 0x1.921fb54442d18p+0;
inline constexpr double kPiO2Lo = 0x1.1a62633145c07p-54;
inline constexpr double kTwoOverPi = 0x1.45f306dc9c883p-1;

inline constexpr double kLn2Hi = 0x1.62e42fefa39efp-1;
inline constexpr double kLn2Lo = 0x1.abc9e3b39803fp-56;
inline constexpr double kLog2E = 0x1.71547652b82fep+0;

// exp(w) for w below this is treated as exactly 0 (pruning threshold,
// value ~1e-300; both variants apply it so they agree bit-for-bit here).
inline constexpr double kExpPrune = -690.0;

// phase = t * (ln_hi + ln_lo) reduced into [-pi - 1e-3, pi + 1e-3].
// t*ln_hi is split exactly with an fma; the quotient k never exceeds
// 2^52, so r1 = fma(-k, P1, hi) is the exactly rounded head.
inline double phase_mod_2pi(double t, double ln_hi, double ln_lo) {
    double hi = t * ln_hi;
    double err = std::fma(t, ln_hi, -hi);
    double lo = std::fma(t, ln_lo, err);
    double k = std::nearbyint(hi * kInvTwoPi);
    double r = std::fma(-k, kTwoPiP1, hi);
    r += lo;
    r = std::fma(-k, kTwoPiP2, r);
    r = std::fma(-k, kTwoPiP3, r);
    return r;
}

}  // namespace resonance::simd::detail

namespace resonance::simd {

enum class Mode;

namespace detail {

void grid_scalar(const double* q, const double* lp, std::size_t np,
                 double t0, double dt, double* out, std::size_t n);
double gauss_scalar(const double* coef, const double* x, std::size_t n, double inv4l2);
std::complex<double> dirichlet_scalar(double t, const double* coef,
                                      const double* ln_hi, const double* ln_lo,
                                      std::size_t n);

#if RESONANCE_HAVE_AVX2_TU
void grid_avx2(const double* q, const double* lp, std::size_t np,
               double t0, double dt, double* out, std::size_t n);
double gauss_avx2(const double* coef, const double* x, std::size_t n, double inv4l2);
std::complex<double> dirichlet_avx2(double t, const double* coef,
                                    const double* ln_hi, const double* ln_lo,
                                    std::size_t n);
#endif

}  // namespace detail
}  // namespace resonance::simd
