#pragma once

#include <complex>
#include <span>
#include <vector>

#include "resonance/primes.hpp"

namespace resonance {

enum class ZetaMethod { euler_maclaurin, euler_product, alternating };

struct ZetaValue {
    std::complex<double> s;
    std::complex<double> value;
    ZetaMethod method = ZetaMethod::euler_maclaurin;
    double est_error = 0.0;  // rigorous truncation bound + rounding model
};

// zeta(s) by Euler-Maclaurin: main Dirichlet sum of N terms, integral and
// half-term corrections, Bernoulli corrections through B12, and the first
// omitted term (with B14) as a certified remainder bound.  N is chosen from
// that bound for the requested target, roughly |t|/2.7 at 1e-6 and ~0.7|t|
// at 1e-10.  Domain: Re(s) >= 1/2, s != 1, |Im(s)| <= 1e12; targets below
// the double-precision phase floor raise precision_error, evaluations that
// would need more than ~1e9 terms raise resource_error.
ZetaValue zeta(std::complex<double> s, double target_error = 1e-10);

// Pre-sizes the shared ln-n table so later zeta() calls (possibly from
// several threads) never grow it concurrently.
void zeta_reserve(double t_max, double target_error);

// prod_{p <= cutoff} (1 - p^{-s})^{-1}, computed in log space.
// Requires Re(s) > 0 and cutoff <= primes.limit().
ZetaValue zeta_truncated(std::complex<double> s, double cutoff, const PrimeTable& primes);

// Slow independent reference: eta(s) = sum (-1)^{n-1} n^{-s} summed directly
// past 2|t| terms and tail-damped by repeated averaging of partial sums in
// long double, then zeta = eta / (1 - 2^{1-s}).  No Bernoulli machinery
// shared with zeta().  Intended for |Im(s)| <= ~2e4.
std::complex<double> zeta_alternating(std::complex<double> s);

// |zeta(1+it) / zeta(1+it; Y) - 1| for each cutoff Y (ascending order
// required).  Valid for heights T^{1/10} <= |t| <= T.
std::vector<double> lemma1_deviation(double t, double T, std::span<const double> cutoffs,
                                     const PrimeTable& primes);

}  // namespace resonance
