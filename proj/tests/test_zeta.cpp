#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "resonance/errors.hpp"
#include "resonance/primes.hpp"
#include "resonance/rng.hpp"
#include "resonance/zeta.hpp"

using namespace resonance;
using cplx = std::complex<double>;

TEST_CASE("classical reference values") {
    CHECK(std::abs(zeta({2.0, 0.0}, 1e-13).value - cplx{1.6449340668482264, 0.0}) <= 1e-12);
    CHECK(std::abs(zeta({1.0, 1.0}, 1e-12).value -
                   cplx{0.5821580597520036, -0.9268485643308071}) <= 1e-10);
    CHECK(std::abs(zeta({1.0, 1e4}, 1e-11).value -
                   cplx{0.4973279229716308, -0.5878238243194010}) <= 1e-9);
    CHECK(std::abs(zeta({0.5, 10.0}, 1e-12).value -
                   cplx{1.5448952202967528, -0.1153364652712734}) <= 1e-10);
    CHECK(zeta({2.0, 0.0}, 1e-13).method == ZetaMethod::euler_maclaurin);
}

TEST_CASE("error estimate covers the truth") {
    const ZetaValue z = zeta({1.0, 1.0}, 1e-8);
    CHECK(z.est_error <= 1e-8);
    CHECK(std::abs(z.value - cplx{0.5821580597520036, -0.9268485643308071}) <= z.est_error);
}

TEST_CASE("domain validation") {
    CHECK_THROWS_AS(zeta({1.0, 0.0}, 1e-10), std::domain_error);   // pole
    CHECK_THROWS_AS(zeta({0.4, 5.0}, 1e-10), std::domain_error);   // off the supported strip
    CHECK_THROWS_AS(zeta({1.0, 2e12}, 1e-10), std::out_of_range);  // beyond height cap
    CHECK_THROWS_AS(zeta({1.0, 5.0}, 0.0), std::domain_error);
    CHECK_THROWS_AS(zeta({1.0, 1e9}, 1e-10), precision_error);   // rounding floor ~1e-8 there
    CHECK_THROWS_AS(zeta({1.0, 1e9}, 1e-15), resource_error);    // would need > 1e9 terms
}

TEST_CASE("conjugate symmetry on the 1-line") {
    for (double t : {0.7, 37.5, 4096.0}) {
        const cplx up = zeta({1.0, t}, 1e-11).value;
        const cplx down = zeta({1.0, -t}, 1e-11).value;
        CHECK(std::abs(down - std::conj(up)) <= 1e-11);
    }
}

TEST_CASE("independent alternating-series evaluator agrees") {
    SplitMix64 rng(21);
    int used = 0;
    while (used < 20) {
        const double sigma = rng.uniform(0.5, 4.0);
        const double t = rng.uniform(-2e4, 2e4);
        if (std::abs(t) < 0.1) continue;  // stay clear of the pole neighbourhood
        const cplx s{sigma, t};
        if (std::abs(1.0 - std::exp((1.0 - s) * std::log(2.0))) < 1e-3) continue;
        CHECK(std::abs(zeta(s, 1e-11).value - zeta_alternating(s)) <= 1e-9);
        ++used;
    }
    CHECK_THROWS_AS(zeta_alternating({1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(zeta_alternating({4.5, 1.0}), std::domain_error);
    CHECK_THROWS_AS(zeta_alternating({1.0, 3e4}), std::out_of_range);
}

TEST_CASE("finite product over sieved primes") {
    const PrimeTable t10 = PrimeTable::sieve(10);
    CHECK(zeta_truncated({1.0, 0.0}, 10.0, t10).value.real() ==
          doctest::Approx(4.375).epsilon(1e-14));
    CHECK(zeta_truncated({1.0, 0.0}, 2.0, t10).value.real() ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(zeta_truncated({1.0, 0.0}, 10.0, t10).method == ZetaMethod::euler_product);
    CHECK_THROWS_AS(zeta_truncated({1.0, 0.0}, 100.0, t10), config_error);
    CHECK_THROWS_AS(zeta_truncated({0.0, 1.0}, 10.0, t10), std::domain_error);
}

TEST_CASE("truncated product magnitude bounded by its own harmonic product") {
    const PrimeTable t = PrimeTable::sieve(1000);
    const double cap = t.mertens_product(1000);
    SplitMix64 rng(5);
    for (int i = 0; i < 30; ++i) {
        const double tt = rng.uniform(1.0, 1e4);
        CHECK(std::abs(zeta_truncated({1.0, tt}, 1000.0, t).value) <= cap + 1e-9);
    }
}

TEST_CASE("product converges to the function where the series is absolute") {
    const PrimeTable t = PrimeTable::sieve(1'000'000);
    const cplx full = zeta({2.0, 0.0}, 1e-13).value;
    CHECK(std::abs(zeta_truncated({2.0, 0.0}, 1e6, t).value - full) <= 1e-5);
}

TEST_CASE("deviation of truncations shrinks with the cutoff") {
    const PrimeTable t = PrimeTable::sieve(100'000);
    const std::vector<double> cutoffs{1e2, 1e3, 1e4, 1e5};
    const auto dev = lemma1_deviation(500.0, 1e4, cutoffs, t);
    REQUIRE(dev.size() == cutoffs.size());
    for (double d : dev) {
        CHECK(d >= 0.0);
        CHECK(std::isfinite(d));
    }
    CHECK(dev.back() < dev.front());
}

TEST_CASE("deviation check enforces the height window") {
    const PrimeTable t = PrimeTable::sieve(1000);
    const std::vector<double> cutoffs{100.0};
    CHECK_THROWS_AS(lemma1_deviation(1.5, 1e4, cutoffs, t), std::domain_error);
    CHECK_THROWS_AS(lemma1_deviation(2e4, 1e4, cutoffs, t), std::domain_error);
    const std::vector<double> descending{100.0, 10.0};
    CHECK_THROWS_AS(lemma1_deviation(500.0, 1e4, descending, t), std::domain_error);
    const std::vector<double> beyond{1e6};
    CHECK_THROWS_AS(lemma1_deviation(500.0, 1e4, beyond, t), config_error);
}

TEST_CASE("pre-sizing the shared log table changes nothing") {
    zeta_reserve(1e5, 1e-8);
    const cplx a = zeta({1.0, 5e4}, 1e-8).value;
    const cplx b = zeta({1.0, 5e4}, 1e-10).value;
    CHECK(std::abs(a - b) <= 1.1e-8);
}
