#pragma once

#include <cstdint>
#include <vector>

namespace resonance {

// Primes up to a fixed limit plus the log-weighted prefix sums the rest of
// the library keeps asking for.  Immutable after sieve(); queries are const
// and safe to share across threads.
class PrimeTable {
public:
    // Segmented Eratosthenes.  Deterministic, O(limit) memory in the bit
    // array, limit capped at 1e8 to keep the table affordable.
    static PrimeTable sieve(std::int64_t limit);

    std::int64_t limit() const { return limit_; }
    const std::vector<std::int64_t>& primes() const { return primes_; }
    const std::vector<double>& logs() const { return logs_; }

    // pi(x) = #{p <= x}
    std::int64_t prime_pi(double x) const;

    // theta(x) = sum_{p<=x} ln p  (compensated prefix sums)
    double chebyshev_theta(double x) const;

    // prod_{p<=x} (1 - 1/p)^{-1}; grows like e^gamma ln x.  Requires x >= 2.
    double mertens_product(double x) const;

    // pi(x) ln x - theta(x) = integral_2^x pi(u)/u du.  Nonnegative; bounds
    // the log of the resonator peak at the matching cutoff.
    double sup_log_bound(double x) const;

private:
    std::int64_t limit_ = 0;
    std::vector<std::int64_t> primes_;
    std::vector<double> logs_;
    std::vector<double> theta_prefix_;

    // number of primes <= x, after range validation
    std::size_t count_leq(double x) const;
    void check_range(double x, double min_x) const;
};

}  // namespace resonance
