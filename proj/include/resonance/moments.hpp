#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "resonance/kernel.hpp"
#include "resonance/primes.hpp"
#include "resonance/resonator.hpp"

namespace resonance {

// Dirichlet coefficients of the prime-truncated zeta factor: a_k = 1/k for
// every k <= k_limit whose prime factors all stay <= x, a_k = 0 otherwise.
struct ZetaCoefficients {
    double x = 0.0;
    std::int64_t k_limit = 0;
    std::vector<std::int64_t> ks;
    std::vector<double> a;     // 1/k
    std::vector<double> logs;  // ln k

    static ZetaCoefficients build(double x, std::int64_t k_limit, const PrimeTable& primes,
                                  std::size_t max_entries = SmoothBasis::kDefaultBudget);
    std::size_t size() const { return ks.size(); }
};

// prod_{p<=X} (1 - q_p/p)^{-1} and its split into the Mertens product times
// the correction prod (p-1)/(p-q_p).
struct BoundParts {
    double closed_form_bound = 1.0;
    double mertens_part = 1.0;
    double correction_part = 1.0;
};

// One step of the self-similarity chain.  lhs >= rhs*(1 - slack) holds at
// any truncation because the dropped terms are positive; slack -> 0 as the
// basis grows.
struct PerKResult {
    std::int64_t k = 1;
    double lhs = 0.0;    // sum_{m,n} q_m q_n phi_hat(ln m - ln n - ln k)
    double rhs = 0.0;    // q_k * i2
    double slack = 0.0;  // relative truncation slack, in [0, 1]
};

enum class MomentMethod { closed_form, quadrature };

struct MomentReport {
    double i2 = 0.0;
    std::complex<double> i1;    // imaginary part vanishes by conjugate symmetry
    double ratio = 0.0;         // Re(i1)/i2
    double closed_form_bound = 0.0;
    double mertens_part = 0.0;
    double correction_part = 0.0;
    double coefficient_sum = 0.0;  // sum_{k<=K} a_k q_k
    double slack = 0.0;            // guaranteed: ratio >= coefficient_sum - slack
    double truncation_deficit = 0.0;
    double benchmark_theorem = 0.0;  // e^gamma (ln ln T + ln ln ln T)
    MomentMethod method = MomentMethod::closed_form;
};

// Quadrature mass split at sqrt(T) and T (absolute values, not fractions).
struct RangePiece {
    double inner = 0.0;   // |t| <= sqrt(T)
    double middle = 0.0;  // sqrt(T) < |t| <= T
    double outer = 0.0;   // |t| > T
    double est_error = 0.0;

    double total() const { return inner + middle + outer; }
    double middle_share() const { return total() > 0.0 ? middle / total() : 0.0; }
    double outer_share() const { return total() > 0.0 ? outer / total() : 0.0; }
};

struct RangeDecomposition {
    double t_inner = 0.0;  // sqrt(T)
    double t_outer = 0.0;  // T
    RangePiece i2, i1;
};

// i2 = sum_{m,n} q_m q_n phi_hat(ln(m/n)); strictly positive.
double i2_closed(const SmoothBasis& basis, const KernelSpec& kern, int threads = 0);

// i1 = sum_k a_k sum_{m,n} q_m q_n phi_hat(ln(m/(n k))); all terms positive.
// Throws config_error when the coefficient cutoff differs from the basis.
double i1_closed(const SmoothBasis& basis, const ZetaCoefficients& coeffs,
                 const KernelSpec& kern, int threads = 0);

// The same two moments as damped integrals of |R_N(t)|^2 (times the real
// part of the truncated zeta series for i1).  Meaningful only when the
// kernel scale is moderate; throws resource_error when the oscillation
// budget explodes (tiny lambda), pointing at the closed forms.
double i2_quadrature(const SmoothBasis& basis, const KernelSpec& kern);
double i1_quadrature(const SmoothBasis& basis, const ZetaCoefficients& coeffs,
                     const KernelSpec& kern);

PerKResult per_k_inequality(const SmoothBasis& basis, std::int64_t k_val,
                            const WeightSystem& w, const KernelSpec& kern, int threads = 0);

BoundParts closed_form_bound(const WeightSystem& w, const PrimeTable& primes);

// Partial sum sum_{k<=K} a_k q_k; nondecreasing in K, bounded above by the
// closed-form bound.
double coefficient_sum(const ZetaCoefficients& coeffs, const WeightSystem& w, std::int64_t K);

// Splits the damped mass of |R|^2 (and of the zeta-weighted integrand) at
// sqrt(T) and T.  Quadrature-only; requires T <= 1e5.
RangeDecomposition range_decomposition(const ResonatorConfig& cfg, const SmoothBasis& basis,
                                       const ZetaCoefficients& coeffs);

MomentReport full_report(const ResonatorConfig& cfg, const SmoothBasis& basis,
                         const ZetaCoefficients& coeffs, const WeightSystem& w,
                         const KernelSpec& kern, const PrimeTable& primes,
                         MomentMethod method = MomentMethod::closed_form, int threads = 0);

}  // namespace resonance
