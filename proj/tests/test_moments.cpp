#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "resonance/errors.hpp"
#include "resonance/kernel.hpp"
#include "resonance/moments.hpp"
#include "resonance/numeric.hpp"
#include "resonance/primes.hpp"
#include "resonance/resonator.hpp"

using namespace resonance;

namespace {
WeightSystem make_weights(double x, const PrimeTable& t, double T = 1e6) {
    ResonatorConfig::Overrides o;
    o.X = x;
    return WeightSystem(ResonatorConfig::make(T, o), t);
}
}  // namespace

TEST_CASE("pair sum on a two-entry basis matches the hand expansion") {
    const PrimeTable t = PrimeTable::sieve(100);
    const SmoothBasis b = SmoothBasis::build(make_weights(3.0, t), 2);  // {1, 2} with q = {1, 1/3}
    REQUIRE(b.size() == 2);
    const KernelSpec k1{1.0};
    // sqrt(pi)(1 + 1/9) + (2/3) phi_hat(ln 2)
    CHECK(i2_closed(b, k1) == doctest::Approx(3.0172915118225813).epsilon(1e-13));
    const auto q = i2_quadrature(b, k1);
    CHECK(std::abs(q - i2_closed(b, k1)) <= 1e-8 * i2_closed(b, k1));
}

TEST_CASE("single-entry mass is the bare transform") {
    const PrimeTable t = PrimeTable::sieve(100);
    const SmoothBasis b = SmoothBasis::build(make_weights(10.0, t), 1);
    for (double lam : {1.0, 0.5}) {
        CHECK(i2_closed(b, KernelSpec{lam}) == doctest::Approx(kSqrtPi / lam).epsilon(1e-14));
    }
}

TEST_CASE("mass dominates its diagonal and grows with the truncation") {
    const PrimeTable t = PrimeTable::sieve(100);
    const WeightSystem w = make_weights(10.0, t);
    const KernelSpec k{0.5};
    double prev = 0.0;
    for (std::int64_t n : {50, 100, 200}) {
        const SmoothBasis b = SmoothBasis::build(w, n);
        double diag = 0.0;
        for (double q : b.weights()) diag += q * q;
        const double i2 = i2_closed(b, k);
        CHECK(i2 >= (kSqrtPi / k.lambda) * diag);
        CHECK(i2 > prev);
        prev = i2;
    }
}

TEST_CASE("closed form and quadrature agree on the mass") {
    const PrimeTable t = PrimeTable::sieve(100);
    const WeightSystem w = make_weights(10.0, t);
    const SmoothBasis b = SmoothBasis::build(w, 50);
    for (double lam : {1.0, 0.5}) {
        const KernelSpec k{lam};
        const double closed = i2_closed(b, k);
        CHECK(std::abs(i2_quadrature(b, k) - closed) <= 1e-6 * closed);
    }
}

TEST_CASE("first moment with unit coefficients reduces to the mass") {
    const PrimeTable t = PrimeTable::sieve(100);
    const SmoothBasis b = SmoothBasis::build(make_weights(10.0, t), 100);
    const KernelSpec k1{1.0};
    const ZetaCoefficients only_k1 = ZetaCoefficients::build(10.0, 1, t);
    REQUIRE(only_k1.size() == 1);
    CHECK(i1_closed(b, only_k1, k1) == doctest::Approx(i2_closed(b, k1)).epsilon(1e-14));

    ZetaCoefficients empty;
    empty.x = 10.0;
    empty.k_limit = 0;
    CHECK(i1_closed(b, empty, k1) == 0.0);
}

TEST_CASE("first moment cross-checked by quadrature") {
    const PrimeTable t = PrimeTable::sieve(100);
    const SmoothBasis b = SmoothBasis::build(make_weights(10.0, t), 20);
    const ZetaCoefficients coeffs = ZetaCoefficients::build(10.0, 20, t);
    const KernelSpec k1{1.0};
    const double closed = i1_closed(b, coeffs, k1);
    const double quad = i1_quadrature(b, coeffs, k1);
    CHECK(closed > 0.0);
    CHECK(std::abs(quad - closed) <= 1e-6 * closed);
}

TEST_CASE("coefficient construction") {
    const PrimeTable t = PrimeTable::sieve(100);
    const ZetaCoefficients c = ZetaCoefficients::build(10.0, 100, t);
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(c.a[i] == 1.0 / static_cast<double>(c.ks[i]));
        // every k is composed of primes <= 10 only
        std::int64_t m = c.ks[i];
        for (std::int64_t p : {2, 3, 5, 7})
            while (m % p == 0) m /= p;
        CHECK(m == 1);
    }
    CHECK(c.ks.front() == 1);
    CHECK_THROWS_AS(ZetaCoefficients::build(10.0, 0, t), std::domain_error);
    CHECK_THROWS_AS(ZetaCoefficients::build(1000.0, 10, t), config_error);
    CHECK_THROWS_AS(ZetaCoefficients::build(10.0, 1'000'000, t, 100), resource_error);
}

TEST_CASE("per-k self-similarity bound") {
    const PrimeTable t = PrimeTable::sieve(100);
    const WeightSystem w = make_weights(10.0, t);
    const SmoothBasis b = SmoothBasis::build(w, 1000);
    const KernelSpec k{0.5};

    const PerKResult unit = per_k_inequality(b, 1, w, k);
    CHECK(unit.lhs == unit.rhs);  // both sides are the same sum for k = 1
    CHECK(unit.slack == 0.0);

    const PerKResult two = per_k_inequality(b, 2, w, k);
    CHECK(two.rhs == doctest::Approx(0.8 * i2_closed(b, k)).epsilon(1e-13));
    CHECK(two.lhs >= two.rhs * (1.0 - two.slack) - 1e-12 * (two.rhs + 1.0));
    CHECK(two.slack >= 0.0);
    CHECK(two.slack <= 1.0);

    // k outside the smooth support: the bound degenerates to positivity
    const PerKResult eleven = per_k_inequality(b, 11, w, k);
    CHECK(eleven.rhs == 0.0);
    CHECK(eleven.lhs > 0.0);
    const PerKResult composite = per_k_inequality(b, 22, w, k);
    CHECK(composite.rhs == 0.0);

    CHECK_THROWS_AS(per_k_inequality(b, 0, w, k), std::domain_error);
}

TEST_CASE("per-k slack shrinks as the basis grows") {
    const PrimeTable t = PrimeTable::sieve(100);
    const WeightSystem w = make_weights(10.0, t);
    const KernelSpec k{0.5};
    double prev = 1.0;
    for (std::int64_t n : {100, 1000, 10000}) {
        const SmoothBasis b = SmoothBasis::build(w, n);
        const PerKResult r = per_k_inequality(b, 8, w, k);
        CHECK(r.slack < prev);
        prev = r.slack;
    }
    // the weights decay slowly, so the envelope is loose: ~0.20 at N=1e4
    CHECK(prev < 0.25);
}

TEST_CASE("closed-form lower bound factorization") {
    const PrimeTable t = PrimeTable::sieve(10000);
    const BoundParts b10 = closed_form_bound(make_weights(10.0, t), t);
    CHECK(b10.closed_form_bound == doctest::Approx(2.5236138149830557).epsilon(1e-13));
    CHECK(b10.mertens_part == doctest::Approx(4.375).epsilon(1e-13));
    CHECK(b10.correction_part == doctest::Approx(0.57682601485326988).epsilon(1e-13));
    for (double x : {10.0, 100.0, 1000.0, 10000.0}) {
        const BoundParts b = closed_form_bound(make_weights(x, t), t);
        CHECK(std::abs(b.closed_form_bound - b.mertens_part * b.correction_part) <=
              1e-12 * b.closed_form_bound);
        CHECK(b.correction_part > 0.0);
        CHECK(b.correction_part <= 1.0);
    }
}

TEST_CASE("coefficient partial sums climb to the closed form") {
    const PrimeTable t = PrimeTable::sieve(100);
    const WeightSystem w = make_weights(10.0, t);
    const ZetaCoefficients c = ZetaCoefficients::build(10.0, 1'000'000, t);
    CHECK(coefficient_sum(c, w, 1) == 1.0);
    CHECK(coefficient_sum(c, w, 2) == doctest::Approx(1.4).epsilon(1e-15));
    CHECK(coefficient_sum(c, w, 1'000'000) ==
          doctest::Approx(2.5236127130223803).epsilon(1e-12));
    const double cap = closed_form_bound(w, t).closed_form_bound;
    double prev = 0.0;
    for (std::int64_t K = 1; K <= 1024; K *= 2) {
        const double s = coefficient_sum(c, w, K);
        CHECK(s >= prev);
        CHECK(s <= cap);
        prev = s;
    }
    CHECK_THROWS_AS(coefficient_sum(c, w, 0), std::domain_error);
}

TEST_CASE("moment ratio stays above the coefficient sum minus slack") {
    const PrimeTable t = PrimeTable::sieve(100);
    ResonatorConfig::Overrides o;
    o.X = 10.0;
    o.smooth_limit = 1000;
    for (double lam : {1.0, 0.5, 0.1}) {
        o.lambda = lam;
        const ResonatorConfig cfg = ResonatorConfig::make(1e6, o);
        const WeightSystem w(cfg, t);
        const SmoothBasis b = SmoothBasis::build(w, cfg.smooth_limit);
        const ZetaCoefficients c = ZetaCoefficients::build(cfg.X, 1000, t);
        const MomentReport rep = full_report(cfg, b, c, w, KernelSpec{cfg.lambda}, t);
        CHECK(rep.i2 > 0.0);
        CHECK(rep.i1.real() > 0.0);
        CHECK(std::abs(rep.i1.imag()) <= 1e-12 * rep.i1.real());
        CHECK(rep.ratio == doctest::Approx(rep.i1.real() / rep.i2).epsilon(1e-15));
        CHECK(rep.slack >= 0.0);
        CHECK(rep.ratio >= rep.coefficient_sum - rep.slack - 1e-9 * rep.coefficient_sum);
        CHECK(rep.truncation_deficit >= 0.0);
        CHECK(rep.closed_form_bound ==
              doctest::Approx(rep.mertens_part * rep.correction_part).epsilon(1e-12));
        CHECK(rep.benchmark_theorem ==
              doctest::Approx(kExpGamma * (std::log(std::log(1e6)) +
                                           std::log(std::log(std::log(1e6))))));
    }
}

TEST_CASE("degenerate single-coefficient report has unit ratio") {
    const PrimeTable t = PrimeTable::sieve(100);
    ResonatorConfig::Overrides o;
    o.X = 10.0;
    o.smooth_limit = 200;
    o.lambda = 0.5;
    const ResonatorConfig cfg = ResonatorConfig::make(1e6, o);
    const WeightSystem w(cfg, t);
    const SmoothBasis b = SmoothBasis::build(w, cfg.smooth_limit);
    const ZetaCoefficients c = ZetaCoefficients::build(cfg.X, 1, t);
    const MomentReport rep = full_report(cfg, b, c, w, KernelSpec{cfg.lambda}, t);
    CHECK(rep.ratio == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rep.coefficient_sum == 1.0);
    CHECK(rep.slack == 0.0);
}

TEST_CASE("report via quadrature stays consistent with the closed form") {
    const PrimeTable t = PrimeTable::sieve(100);
    ResonatorConfig::Overrides o;
    o.X = 10.0;
    o.smooth_limit = 50;
    o.lambda = 1.0;
    const ResonatorConfig cfg = ResonatorConfig::make(1e6, o);
    const WeightSystem w(cfg, t);
    const SmoothBasis b = SmoothBasis::build(w, cfg.smooth_limit);
    const ZetaCoefficients c = ZetaCoefficients::build(cfg.X, 50, t);
    const KernelSpec k{cfg.lambda};
    const MomentReport closed = full_report(cfg, b, c, w, k, t, MomentMethod::closed_form);
    const MomentReport quad = full_report(cfg, b, c, w, k, t, MomentMethod::quadrature);
    CHECK(quad.method == MomentMethod::quadrature);
    CHECK(std::abs(quad.i2 - closed.i2) <= 1e-5 * closed.i2);
    CHECK(std::abs(quad.ratio - closed.ratio) <= 1e-4 * closed.ratio);
}

TEST_CASE("bound tracks the harmonic prime growth across cutoffs") {
    const PrimeTable t = PrimeTable::sieve(100);
    for (double x : {10.0, 20.0, 50.0}) {
        const BoundParts b = closed_form_bound(make_weights(x, t), t);
        CHECK(std::abs(b.closed_form_bound - kExpGamma * std::log(x)) <= 2.0);
    }
}

TEST_CASE("mismatched smoothness cutoffs are rejected") {
    const PrimeTable t = PrimeTable::sieve(100);
    const SmoothBasis b = SmoothBasis::build(make_weights(10.0, t), 100);
    const WeightSystem w20 = make_weights(20.0, t);
    const ZetaCoefficients c20 = ZetaCoefficients::build(20.0, 100, t);
    const KernelSpec k1{1.0};
    CHECK_THROWS_AS(i1_closed(b, c20, k1), config_error);
    CHECK_THROWS_AS(coefficient_sum(c20, make_weights(10.0, t), 10), config_error);
    ResonatorConfig::Overrides o;
    o.X = 10.0;
    const ResonatorConfig cfg = ResonatorConfig::make(1e6, o);
    CHECK_THROWS_AS(full_report(cfg, b, c20, make_weights(10.0, t), k1, t), config_error);
}

TEST_CASE("range split of the smoothed integrals") {
    const PrimeTable t2 = PrimeTable::sieve(100);
    double prev_outer_share = 1.0;
    for (double T : {1e2, 1e3, 1e4}) {
        const ResonatorConfig cfg = ResonatorConfig::make(T);
        const WeightSystem w(cfg, t2);
        const SmoothBasis b = SmoothBasis::build(w, cfg.smooth_limit);
        const ZetaCoefficients c =
            ZetaCoefficients::build(cfg.X, 100, t2);
        const RangeDecomposition d = range_decomposition(cfg, b, c);
        CHECK(d.t_inner == doctest::Approx(std::sqrt(T)));
        CHECK(d.t_outer == doctest::Approx(T));
        CHECK(d.i2.inner >= 0.0);
        CHECK(d.i2.middle >= 0.0);
        CHECK(d.i2.outer >= -1e-12);
        if (T == 1e3) CHECK(d.i2.middle_share() >= 0.5);
        CHECK(d.i2.outer_share() < prev_outer_share);
        prev_outer_share = d.i2.outer_share();
    }
    // far beyond the quadrature budget
    const ResonatorConfig big = ResonatorConfig::make(2e5);
    const WeightSystem wbig(big, t2);
    const SmoothBasis bbig = SmoothBasis::build(wbig, big.smooth_limit);
    const ZetaCoefficients cbig = ZetaCoefficients::build(big.X, 100, t2);
    CHECK_THROWS_AS(range_decomposition(big, bbig, cbig), resource_error);
}
