#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace resonance::simd {

// Hot inner loops exist twice: a scalar reference build on libm, and an
// AVX2 build with its own vector sincos/log/exp.  The active variant is
// picked once at runtime (CPU feature probe, RESONANCE_SIMD env override,
// or force()) and recorded so runs are reproducible per machine+mode.
enum class Mode { scalar, avx2 };

Mode active();
bool supported(Mode m);
void force(Mode m);   // throws config_error if m is not supported here
const char* name(Mode m);

// out[j] = log | prod_p (1 - q_p e^{i (t0 + j dt) ln p})^{-1} |
// weights and logp run over the active primes of one resonator.
void resonator_log_abs_grid(std::span<const double> weights,
                            std::span<const double> logp,
                            double t0, double dt, std::span<double> out);

// sum_i coef[i] * exp(-x[i]^2 * inv_four_lambda_sq), compensated.
// Terms whose exponent drops below -690 (value < ~1e-300) contribute 0.
double gaussian_weighted_sum(std::span<const double> coef,
                             std::span<const double> x,
                             double inv_four_lambda_sq);

// sum_i coef[i] * e^{-i t ln n_i} where ln n_i = ln_hi[i] + ln_lo[i]
// (double-double logs; phases are reduced mod 2pi in extended precision,
// which keeps the sum honest for |t| well beyond 1e6).
std::complex<double> dirichlet_sum(double t,
                                   std::span<const double> coef,
                                   std::span<const double> ln_hi,
                                   std::span<const double> ln_lo);

}  // namespace resonance::simd
