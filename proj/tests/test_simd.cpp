#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "oracles.hpp"
#include "resonance/primes.hpp"
#include "resonance/resonator.hpp"
#include "resonance/rng.hpp"
#include "resonance/simd.hpp"

using namespace resonance;

namespace {

struct Inputs {
    std::vector<double> weights, logp;          // resonator grid kernel
    std::vector<double> coef, x;                // gaussian sum kernel
    std::vector<double> dcoef, ln_hi, ln_lo;    // dirichlet kernel
    std::vector<std::int64_t> n;
};

Inputs make_inputs() {
    Inputs in;
    const PrimeTable t = PrimeTable::sieve(100);
    for (std::size_t i = 0; i < t.primes().size(); ++i) {
        in.weights.push_back(1.0 - static_cast<double>(t.primes()[i]) / 101.0);
        in.logp.push_back(t.logs()[i]);
    }
    SplitMix64 rng(404);
    for (int i = 0; i < 1000; ++i) {
        in.coef.push_back(rng.uniform(0.0, 1.0));
        in.x.push_back(rng.uniform(-60.0, 60.0));
    }
    for (std::int64_t k = 1; k <= 500; ++k) {
        in.n.push_back(k);
        in.dcoef.push_back(1.0 / static_cast<double>(k));
        const long double l = logl(static_cast<long double>(k));
        const double hi = static_cast<double>(l);
        in.ln_hi.push_back(hi);
        in.ln_lo.push_back(static_cast<double>(l - static_cast<long double>(hi)));
    }
    return in;
}

struct ModeGuard {
    simd::Mode saved = simd::active();
    ~ModeGuard() { simd::force(saved); }
};

}  // namespace

TEST_CASE("mode plumbing") {
    CHECK(simd::supported(simd::Mode::scalar));
    CHECK(simd::name(simd::Mode::scalar) == std::string("scalar"));
    CHECK(simd::name(simd::Mode::avx2) == std::string("avx2"));
    ModeGuard guard;
    simd::force(simd::Mode::scalar);
    CHECK(simd::active() == simd::Mode::scalar);
}

TEST_CASE("scalar kernels against brute-force references") {
    ModeGuard guard;
    simd::force(simd::Mode::scalar);
    const Inputs in = make_inputs();

    // gaussian-weighted sum
    const double inv = 1.0 / (4.0 * 0.7 * 0.7);
    double direct = 0.0;
    for (std::size_t i = 0; i < in.coef.size(); ++i)
        direct += in.coef[i] * std::exp(-in.x[i] * in.x[i] * inv);
    const double fast = simd::gaussian_weighted_sum(in.coef, in.x, inv);
    CHECK(std::abs(fast - direct) <= 1e-12 * std::abs(direct) + 1e-300);

    // dirichlet sum at moderate height
    const double t = 12345.678;
    const auto ref = oracle::dirichlet_slow(t, in.dcoef, in.n);
    const auto got = simd::dirichlet_sum(t, in.dcoef, in.ln_hi, in.ln_lo);
    CHECK(std::abs(got - ref) <= 1e-11);

    // resonator log grid against the direct per-point formula
    std::vector<double> out(257);
    simd::resonator_log_abs_grid(in.weights, in.logp, 3.0, 0.25, out);
    for (std::size_t j = 0; j < out.size(); j += 16) {
        const double tt = 3.0 + 0.25 * static_cast<double>(j);
        double acc = 0.0;
        for (std::size_t i = 0; i < in.weights.size(); ++i) {
            const double q = in.weights[i];
            acc -= 0.5 * std::log(1.0 - 2.0 * q * std::cos(tt * in.logp[i]) + q * q);
        }
        CHECK(std::abs(out[j] - acc) <= 1e-11);
    }
}

TEST_CASE("vector build agrees with the scalar build") {
    if (!simd::supported(simd::Mode::avx2)) return;  // nothing to compare on this host
    ModeGuard guard;
    const Inputs in = make_inputs();

    simd::force(simd::Mode::scalar);
    std::vector<double> grid_s(1024);
    simd::resonator_log_abs_grid(in.weights, in.logp, 100.0, 0.01, grid_s);
    const double inv = 1.0 / (4.0 * 0.33 * 0.33);
    const double gauss_s = simd::gaussian_weighted_sum(in.coef, in.x, inv);
    const auto dir_small_s = simd::dirichlet_sum(54321.0, in.dcoef, in.ln_hi, in.ln_lo);
    const auto dir_big_s = simd::dirichlet_sum(9.9e11, in.dcoef, in.ln_hi, in.ln_lo);

    simd::force(simd::Mode::avx2);
    std::vector<double> grid_v(1024);
    simd::resonator_log_abs_grid(in.weights, in.logp, 100.0, 0.01, grid_v);
    for (std::size_t j = 0; j < grid_s.size(); ++j)
        CHECK(std::abs(grid_v[j] - grid_s[j]) <= 2e-11);
    CHECK(std::abs(simd::gaussian_weighted_sum(in.coef, in.x, inv) - gauss_s) <=
          1e-12 * std::abs(gauss_s));
    CHECK(std::abs(simd::dirichlet_sum(54321.0, in.dcoef, in.ln_hi, in.ln_lo) - dir_small_s) <=
          1e-11);
    CHECK(std::abs(simd::dirichlet_sum(9.9e11, in.dcoef, in.ln_hi, in.ln_lo) - dir_big_s) <=
          1e-10);
}

TEST_CASE("pruned gaussian terms vanish instead of denormalizing") {
    const std::vector<double> coef{1.0, 1.0};
    const std::vector<double> x{0.0, 1000.0};
    // second term has exponent -250000: pruned to zero, first term survives
    CHECK(simd::gaussian_weighted_sum(coef, x, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
}
