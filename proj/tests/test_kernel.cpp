#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "resonance/kernel.hpp"
#include "resonance/numeric.hpp"

using namespace resonance;

TEST_CASE("damping weight basics") {
    CHECK(phi(0.0) == 1.0);
    CHECK(phi(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(phi(2.5) == phi(-2.5));
    CHECK(phi(30.0) >= 0.0);
}

TEST_CASE("transform closed form") {
    const KernelSpec k1{1.0};
    CHECK(phi_hat(0.0, k1) == doctest::Approx(kSqrtPi).epsilon(1e-15));
    CHECK(phi_hat(std::log(2.0), k1) == doctest::Approx(1.5718475162246786).epsilon(1e-14));
    for (double xi : {0.3, 1.0, 4.0, 11.5}) {
        CHECK(phi_hat(xi, k1) == phi_hat(-xi, k1));
        CHECK(phi_hat(xi, k1) > 0.0);
    }
    CHECK_THROWS_AS(phi_hat(1.0, KernelSpec{0.0}), std::domain_error);
    CHECK_THROWS_AS(phi_hat(1.0, KernelSpec{-2.0}), std::domain_error);
}

TEST_CASE("transform scaling law") {
    for (double lam : {0.5, 2.0, 1e-3}) {
        const KernelSpec k{lam};
        for (double xi : {0.0, 0.2, 1.0, 3.0 * lam}) {
            CHECK(phi_hat(xi, k) ==
                  doctest::Approx(phi_hat(xi / lam, KernelSpec{1.0}) / lam).epsilon(1e-13));
        }
    }
}

TEST_CASE("log transform survives underflow") {
    const KernelSpec k1{1.0};
    CHECK(phi_hat(200.0, k1) == 0.0);  // e^{-10000} underflows
    CHECK(std::isfinite(log_phi_hat(200.0, k1)));
    CHECK(log_phi_hat(200.0, k1) == doctest::Approx(std::log(kSqrtPi) - 1e4).epsilon(1e-12));
    CHECK(std::exp(log_phi_hat(3.0, k1)) == doctest::Approx(phi_hat(3.0, k1)).epsilon(1e-13));
}

TEST_CASE("damped quadrature reproduces gaussian mass") {
    const KernelSpec k1{1.0};
    const auto r = integrate_damped([](double) { return std::complex<double>{1.0, 0.0}; }, k1,
                                    10.0, 16);
    CHECK(std::abs(r.value.real() - kSqrtPi) <= 1e-10);
    CHECK(std::abs(r.value.imag()) <= 1e-12);
    CHECK(r.panels >= 1);
}

TEST_CASE("damped quadrature matches transform closed form") {
    const KernelSpec k1{1.0};
    for (double xi : {0.0, 0.5, std::log(2.0), 3.0, 7.0}) {
        const auto r = integrate_damped(
            [xi](double t) {
                return std::complex<double>{std::cos(xi * t), -std::sin(xi * t)};
            },
            k1, 8.0, 24);
        CHECK(std::abs(r.value.real() - phi_hat(xi, k1)) <= 1e-8);
        CHECK(std::abs(r.value.imag()) <= 1e-8);
    }
}

TEST_CASE("quadrature input validation") {
    const KernelSpec k1{1.0};
    const auto one = [](double) { return std::complex<double>{1.0, 0.0}; };
    CHECK_THROWS_AS(integrate_damped(one, k1, 1.0, 1), std::domain_error);
    CHECK_THROWS_AS(integrate_damped(one, k1, 1.0, 65), std::domain_error);
    CHECK_THROWS_AS(integrate_damped(one, k1, 0.0, 8), std::domain_error);
    CHECK_THROWS_AS(integrate_damped(
                        [](double) {
                            return std::complex<double>{
                                std::numeric_limits<double>::quiet_NaN(), 0.0};
                        },
                        k1, 1.0, 8),
                    std::runtime_error);
}

TEST_CASE("plain panel integration") {
    const auto r = integrate_gl([](double t) { return std::complex<double>{t, 0.0}; }, 0.0, 1.0,
                                8, 1, 1e-12);
    CHECK(r.value.real() == doctest::Approx(0.5).epsilon(1e-13));
    CHECK_THROWS_AS(integrate_gl([](double) { return std::complex<double>{1.0, 0.0}; }, 1.0, 1.0,
                                 8, 1, 1e-12),
                    std::domain_error);
}
