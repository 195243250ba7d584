#include "resonance/primes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "resonance/errors.hpp"
#include "resonance/numeric.hpp"

namespace resonance {

namespace {
constexpr std::int64_t kMaxSieveLimit = 100'000'000;
constexpr std::size_t kSegmentBytes = 1 << 18;
}  // namespace

PrimeTable PrimeTable::sieve(std::int64_t limit) {
    if (limit < 2)
        throw std::domain_error("sieve: limit must be >= 2, got " + std::to_string(limit));
    if (limit > kMaxSieveLimit)
        throw resource_error("sieve: limit " + std::to_string(limit) + " exceeds cap " +
                             std::to_string(kMaxSieveLimit));

    PrimeTable t;
    t.limit_ = limit;

    // base primes up to sqrt(limit)
    std::int64_t root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(limit)));
    while ((root + 1) * (root + 1) <= limit) ++root;
    std::vector<char> base(static_cast<std::size_t>(root) + 1, 1);
    std::vector<std::int64_t> base_primes;
    for (std::int64_t i = 2; i <= root; ++i) {
        if (!base[static_cast<std::size_t>(i)]) continue;
        base_primes.push_back(i);
        for (std::int64_t j = i * i; j <= root; j += i) base[static_cast<std::size_t>(j)] = 0;
    }

    std::vector<char> seg(kSegmentBytes);
    for (std::int64_t lo = 2; lo <= limit; lo += static_cast<std::int64_t>(kSegmentBytes)) {
        std::int64_t hi = std::min<std::int64_t>(lo + static_cast<std::int64_t>(kSegmentBytes) - 1, limit);
        std::fill(seg.begin(), seg.begin() + static_cast<std::size_t>(hi - lo + 1), 1);
        for (std::int64_t p : base_primes) {
            if (p * p > hi) break;
            std::int64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
            for (std::int64_t j = start; j <= hi; j += p) seg[static_cast<std::size_t>(j - lo)] = 0;
        }
        for (std::int64_t v = lo; v <= hi; ++v)
            if (seg[static_cast<std::size_t>(v - lo)]) t.primes_.push_back(v);
    }

    t.logs_.reserve(t.primes_.size());
    t.theta_prefix_.reserve(t.primes_.size());
    NeumaierSum theta;
    for (std::int64_t p : t.primes_) {
        double lp = std::log(static_cast<double>(p));
        t.logs_.push_back(lp);
        theta.add(lp);
        t.theta_prefix_.push_back(theta.value());
    }
    return t;
}

void PrimeTable::check_range(double x, double min_x) const {
    if (!(x >= min_x))
        throw std::domain_error("prime query: x = " + std::to_string(x) + " below " +
                                std::to_string(min_x));
    if (x > static_cast<double>(limit_))
        throw std::out_of_range("prime query: x = " + std::to_string(x) +
                                " beyond sieve limit " + std::to_string(limit_));
}

std::size_t PrimeTable::count_leq(double x) const {
    auto it = std::upper_bound(primes_.begin(), primes_.end(), static_cast<std::int64_t>(x));
    return static_cast<std::size_t>(it - primes_.begin());
}

std::int64_t PrimeTable::prime_pi(double x) const {
    check_range(x, 0.0);
    if (x < 2) return 0;
    return static_cast<std::int64_t>(count_leq(x));
}

double PrimeTable::chebyshev_theta(double x) const {
    check_range(x, 0.0);
    std::size_t n = count_leq(x);
    return n == 0 ? 0.0 : theta_prefix_[n - 1];
}

double PrimeTable::mertens_product(double x) const {
    check_range(x, 2.0);
    std::size_t n = count_leq(x);
    long double prod = 1.0L;
    for (std::size_t i = 0; i < n; ++i) {
        long double p = static_cast<long double>(primes_[i]);
        prod *= p / (p - 1.0L);
    }
    return static_cast<double>(prod);
}

double PrimeTable::sup_log_bound(double x) const {
    check_range(x, 2.0);
    std::size_t n = count_leq(x);
    if (n == 0) return 0.0;
    double v = static_cast<double>(n) * std::log(x) - theta_prefix_[n - 1];
    return v < 0.0 ? 0.0 : v;  // nonnegative by construction, guard rounding
}

}  // namespace resonance
