#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "resonance/errors.hpp"
#include "resonance/numeric.hpp"
#include "resonance/primes.hpp"

using namespace resonance;

TEST_CASE("sieve enumerates small prime sets") {
    CHECK(PrimeTable::sieve(10).primes() == std::vector<std::int64_t>{2, 3, 5, 7});
    CHECK(PrimeTable::sieve(2).primes() == std::vector<std::int64_t>{2});
    CHECK(PrimeTable::sieve(100).primes().size() == 25);
}

TEST_CASE("sieve matches trial division up to 1e4") {
    CHECK(PrimeTable::sieve(10000).primes() == oracle::primes_slow(10000));
}

TEST_CASE("sieve rejects degenerate and oversized limits") {
    CHECK_THROWS_AS(PrimeTable::sieve(1), std::domain_error);
    CHECK_THROWS_AS(PrimeTable::sieve(200'000'000), resource_error);
}

TEST_CASE("prime counting function") {
    const PrimeTable t = PrimeTable::sieve(1000);
    CHECK(t.prime_pi(10) == 4);
    CHECK(t.prime_pi(1.5) == 0);
    CHECK(t.prime_pi(1000) == 168);
    CHECK(t.prime_pi(7) == 4);  // inclusive at primes
    CHECK_THROWS_AS(t.prime_pi(1001), std::out_of_range);
    CHECK_THROWS_AS(t.prime_pi(-3), std::domain_error);
}

TEST_CASE("log-weighted prime sum") {
    const PrimeTable t = PrimeTable::sieve(1000);
    CHECK(t.chebyshev_theta(10) == doctest::Approx(5.3471075307174687).epsilon(1e-14));
    CHECK(t.chebyshev_theta(1.9) == 0.0);
    CHECK(t.chebyshev_theta(100) == doctest::Approx(83.728390399063923).epsilon(1e-14));
    // jumps by exactly ln p at each prime
    CHECK(t.chebyshev_theta(7.0) - t.chebyshev_theta(6.9) ==
          doctest::Approx(std::log(7.0)).epsilon(1e-14));
    CHECK(t.chebyshev_theta(8.0) == t.chebyshev_theta(7.0));
}

TEST_CASE("harmonic prime product small values") {
    const PrimeTable t = PrimeTable::sieve(100);
    CHECK(t.mertens_product(3) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(t.mertens_product(10) == doctest::Approx(4.375).epsilon(1e-14));
    CHECK_THROWS_AS(t.mertens_product(1.9), std::domain_error);
}

TEST_CASE("harmonic prime product tracks e^gamma ln x") {
    const PrimeTable t = PrimeTable::sieve(1'000'000);
    double prev = 0.0;
    double prev_gap = 1e9;
    for (double x : {1e2, 1e3, 1e4, 1e5, 1e6}) {
        const double m = t.mertens_product(x);
        CHECK(m > prev);  // nondecreasing in x
        prev = m;
        CHECK(std::abs(m - kExpGamma * std::log(x)) <= 1.0);
        // successive ratios approach 1
        const double gap = std::abs(m / (kExpGamma * std::log(x)) - 1.0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
}

TEST_CASE("resonator peak bound functional") {
    const PrimeTable t = PrimeTable::sieve(1'000'000);
    CHECK(t.sup_log_bound(10) == doctest::Approx(3.8632328412587141).epsilon(1e-14));
    CHECK(t.sup_log_bound(2) == doctest::Approx(0.0));
    for (double x : {2.0, 5.0, 31.0, 997.0, 1e5}) CHECK(t.sup_log_bound(x) >= 0.0);
    // grows like x / ln x
    const double ratio = t.sup_log_bound(1e6) / (1e6 / std::log(1e6));
    CHECK(ratio >= 0.9);
    CHECK(ratio <= 1.2);
}
