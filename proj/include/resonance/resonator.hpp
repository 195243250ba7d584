#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "resonance/primes.hpp"

namespace resonance {

// Run geometry for one target height T.  Everything else hangs off this:
// the prime cutoff X, the Euler-product cutoff Y, the damping scale lambda
// and the series truncation N.  Defaults follow the asymptotic regime but
// every knob can be pinned for desk-scale experiments.
struct ResonatorConfig {
    double T = 0.0;
    double X = 0.0;
    double Y = 0.0;
    double lambda = 0.0;
    std::int64_t smooth_limit = 0;

    struct Overrides {
        std::optional<double> X, Y, lambda;
        std::optional<std::int64_t> smooth_limit;
    };

    // T must exceed e^e so ln ln T is positive.
    // X defaults to (ln T)(ln ln T)/6, lambda to (ln T)/T,
    // Y to min(exp((ln T)^10), 1e8) and is clamped to Y >= X.
    static ResonatorConfig make(double T, const Overrides& o = {});
    void validate() const;
};

// Multiplicative weights q_p = 1 - p/X on primes p <= X, extended to all
// integers by complete multiplicativity.  Primes whose weight is exactly 0
// (p == X) are not stored; weight_of() still returns 0 for their multiples
// because any leftover cofactor kills the weight.
class WeightSystem {
public:
    WeightSystem(const ResonatorConfig& cfg, const PrimeTable& primes);

    const ResonatorConfig& config() const { return cfg_; }
    double cutoff_x() const { return cfg_.X; }

    double prime_weight(std::int64_t p) const;   // q_p for prime arguments
    double weight_of(std::int64_t n) const;      // q_n, n >= 1

    // R(t) = prod_p (1 - q_p p^{it})^{-1}
    std::complex<double> eval_euler(double t) const;

    // log R(0) = sum_p log(X/p), the peak value
    double log_r0() const { return log_r0_; }

    std::span<const std::int64_t> active_primes() const { return primes_; }
    std::span<const double> weights() const { return weights_; }
    std::span<const double> prime_logs() const { return logs_; }

private:
    ResonatorConfig cfg_;
    std::vector<std::int64_t> primes_;
    std::vector<double> weights_;
    std::vector<double> logs_;
    double log_r0_ = 0.0;
};

// The first smooth_limit-bounded slice of the resonator's Dirichlet series:
// all n <= n_max composed of stored primes, with weights q_n.  Entries with
// q_n = 0 are dropped.  Sorted by n.
class SmoothBasis {
public:
    struct Entry {
        std::int64_t n;
        double q;
    };

    static SmoothBasis build(const WeightSystem& w, std::int64_t n_max,
                             std::size_t max_entries = kDefaultBudget);

    std::size_t size() const { return values_.size(); }
    std::span<const std::int64_t> values() const { return values_; }
    std::span<const double> weights() const { return weights_; }
    std::span<const double> logs() const { return logs_; }
    double cutoff_x() const { return x_; }
    std::int64_t n_max() const { return n_max_; }

    double weight_sum() const { return weight_sum_; }       // sum q_n
    double truncation_deficit() const { return deficit_; }  // R(0) - sum q_n

    // sum q_n n^{it}
    std::complex<double> eval_series(double t) const;

    static constexpr std::size_t kDefaultBudget = 20'000'000;

private:
    std::vector<std::int64_t> values_;
    std::vector<double> weights_;
    std::vector<double> logs_;
    double x_ = 0.0;
    std::int64_t n_max_ = 0;
    double weight_sum_ = 0.0;
    double deficit_ = 0.0;
};

// Exponent e such that the resonator obeys |R|^2 <= T^e at this config:
// e = 2 (pi(X) ln X - theta(X)) / ln T.  Also asserts log R(0) stays under
// the prime bound (it equals it at t = 0 up to rounding).
double sup_bound_check(const WeightSystem& w, const PrimeTable& primes);

}  // namespace resonance
