#include "resonance/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "resonance/errors.hpp"
#include "resonance/numeric.hpp"
#include "resonance/parallel.hpp"
#include "resonance/simd.hpp"

namespace resonance {
namespace {

// Past this many scale lengths the Gaussian transform is a hard 0 in double.
constexpr double kWindowScales = 52.6;
// Gaussian damping of the t-integrand is identically 0 past 27.5/lambda.
constexpr double kDampDead = 27.5;

void require_positive_scale(const KernelSpec& kern) {
    if (!(kern.lambda > 0.0))
        throw std::domain_error("moments: kernel scale must be positive");
}

// sum over basis pairs (m, n) with m <= m_cap of
//   q_m q_n phi_hat(ln m - ln n - shift).
// Work is split over fixed m-chunks; inside a chunk the surviving pairs are
// sorted by |ln m - ln n - shift| ascending before compensated summation,
// so near-diagonal spikes are absorbed first.  Chunk partials merge in
// chunk order, which keeps the result independent of the thread count.
double shifted_pair_sum(const SmoothBasis& b, const KernelSpec& kern, double shift,
                        double m_cap, int threads) {
    if (b.size() == 0) throw std::domain_error("moments: empty smooth basis");
    require_positive_scale(kern);
    const double lambda = kern.lambda;
    const double window = kWindowScales * lambda;
    const double inv_four_lambda_sq = 1.0 / (4.0 * lambda * lambda);

    auto logs = b.logs();
    auto qs = b.weights();
    auto vals = b.values();

    std::size_t m_count = vals.size();
    if (m_cap < static_cast<double>(vals.back())) {
        m_count = static_cast<std::size_t>(
            std::upper_bound(vals.begin(), vals.end(), m_cap,
                             [](double cap, std::int64_t v) { return cap < static_cast<double>(v); }) -
            vals.begin());
    }
    if (m_count == 0) return 0.0;

    // chunk size balances parallel grain against gather-buffer memory
    const std::size_t chunk =
        std::max<std::size_t>(1, std::min<std::size_t>(64, 2'000'000 / b.size()));
    const std::size_t n_chunks = (m_count + chunk - 1) / chunk;
    std::vector<double> partial(n_chunks, 0.0);

    parallel_chunks(m_count, chunk, threads, [&](std::size_t mb, std::size_t me) {
        std::vector<std::pair<double, double>> gathered;  // (delta, q_m q_n)
        for (std::size_t m = mb; m < me; ++m) {
            const double center = logs[m] - shift;
            const auto first = std::lower_bound(logs.begin(), logs.end(), center - window);
            for (auto it = first; it != logs.end() && *it <= center + window; ++it) {
                const std::size_t n = static_cast<std::size_t>(it - logs.begin());
                gathered.emplace_back(center - logs[n], qs[m] * qs[n]);
            }
        }
        std::stable_sort(gathered.begin(), gathered.end(),
                         [](const auto& a, const auto& b2) {
                             return std::abs(a.first) < std::abs(b2.first);
                         });
        std::vector<double> delta(gathered.size()), coef(gathered.size());
        for (std::size_t i = 0; i < gathered.size(); ++i) {
            delta[i] = gathered[i].first;
            coef[i] = gathered[i].second;
        }
        partial[mb / chunk] = simd::gaussian_weighted_sum(coef, delta, inv_four_lambda_sq);
    });

    NeumaierSum total;
    for (double v : partial) total.add(v);
    return (kSqrtPi / lambda) * total.value();
}

constexpr double kNoCap = std::numeric_limits<double>::infinity();

double eval_r2(const SmoothBasis& b, double t) { return std::norm(b.eval_series(t)); }

double eval_zeta_re(const ZetaCoefficients& c, double t) {
    NeumaierSum acc;
    for (std::size_t i = 0; i < c.ks.size(); ++i) acc.add(c.a[i] * std::cos(t * c.logs[i]));
    return acc.value();
}

struct DampedRange {
    double value = 0.0;
    double est_error = 0.0;
};

// integral_lo^hi f(t) e^{-(lambda t)^2} dt, chopped into segments of a few
// hundred oscillation periods so the adaptive panel doubling never starts
// hopeless.  max_freq is the largest |d phase/dt| of f.
DampedRange integrate_damped_range(const std::function<double(double)>& f, double lambda,
                                   double lo, double hi, double max_freq) {
    hi = std::min(hi, kDampDead / lambda);
    if (!(hi > lo)) return {};
    double seg = hi - lo;
    if (max_freq > 0.0) seg = std::min(seg, kTwoPi * 512.0 / max_freq);

    NeumaierSum value;
    double err = 0.0;
    for (double a = lo; a < hi; a += seg) {
        const double b = std::min(a + seg, hi);
        if (!(b > a)) break;
        const int cycles = static_cast<int>((b - a) * max_freq / kTwoPi) + 1;
        const int panels = std::max(4, cycles / 3);
        auto piece = integrate_gl(
            [&](double t) {
                const double damp = std::exp(-(lambda * t) * (lambda * t));
                return std::complex<double>(f(t) * damp, 0.0);
            },
            a, b, 16, panels, 1e-11);
        value.add(piece.value.real());
        err += piece.est_error;
    }
    return {value.value(), err};
}

// Refuses quadrature runs whose oscillation count times basis size would
// grind for minutes; the closed forms cover that regime exactly.
void guard_quadrature_work(double lambda, double span, double max_freq, std::size_t basis_size) {
    const double cycles = std::min(span, kDampDead / lambda) * max_freq / kTwoPi;
    if (cycles * static_cast<double>(basis_size) > 5e7)
        throw resource_error(
            "moments: kernel scale too small for quadrature; use the closed-form method");
}

}  // namespace

ZetaCoefficients ZetaCoefficients::build(double x, std::int64_t k_limit, const PrimeTable& primes,
                                         std::size_t max_entries) {
    if (k_limit < 1)
        throw std::domain_error("coefficients: k_limit must be >= 1, got " +
                                std::to_string(k_limit));
    if (x > static_cast<double>(primes.limit()))
        throw config_error("coefficients: prime table limit below x = " + std::to_string(x));

    ZetaCoefficients c;
    c.x = x;
    c.k_limit = k_limit;

    std::vector<std::int64_t> ps;
    for (std::int64_t p : primes.primes()) {
        if (static_cast<double>(p) > x) break;
        ps.push_back(p);
    }

    std::vector<std::int64_t> ks;
    ks.push_back(1);
    struct Frame {
        std::size_t idx;
        std::int64_t val;
    };
    std::vector<Frame> stack;
    stack.push_back({0, 1});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        for (std::size_t i = f.idx; i < ps.size(); ++i) {
            if (ps[i] > k_limit / f.val) break;
            std::int64_t v = f.val * ps[i];
            if (ks.size() >= max_entries)
                throw resource_error("coefficients: entry budget " + std::to_string(max_entries) +
                                     " exceeded below k_limit = " + std::to_string(k_limit));
            ks.push_back(v);
            stack.push_back({i, v});
        }
    }
    std::sort(ks.begin(), ks.end());

    c.ks = std::move(ks);
    c.a.reserve(c.ks.size());
    c.logs.reserve(c.ks.size());
    for (std::int64_t k : c.ks) {
        c.a.push_back(1.0 / static_cast<double>(k));
        c.logs.push_back(std::log(static_cast<double>(k)));
    }
    return c;
}

double i2_closed(const SmoothBasis& basis, const KernelSpec& kern, int threads) {
    return shifted_pair_sum(basis, kern, 0.0, kNoCap, threads);
}

double i1_closed(const SmoothBasis& basis, const ZetaCoefficients& coeffs,
                 const KernelSpec& kern, int threads) {
    if (coeffs.x != basis.cutoff_x())
        throw config_error("i1_closed: smoothness cutoff differs between basis and coefficients");
    NeumaierSum acc;
    for (std::size_t i = 0; i < coeffs.ks.size(); ++i)
        acc.add(coeffs.a[i] * shifted_pair_sum(basis, kern, coeffs.logs[i], kNoCap, threads));
    return acc.value();
}

double i2_quadrature(const SmoothBasis& basis, const KernelSpec& kern) {
    require_positive_scale(kern);
    const double max_freq = basis.logs().empty() ? 0.0 : basis.logs().back();
    const double t_cut = 8.0 / kern.lambda;
    guard_quadrature_work(kern.lambda, t_cut, std::max(max_freq, 1.0), basis.size());
    auto piece = integrate_damped_range([&](double t) { return eval_r2(basis, t); }, kern.lambda,
                                        0.0, t_cut, max_freq);
    return 2.0 * piece.value;  // integrand is even
}

double i1_quadrature(const SmoothBasis& basis, const ZetaCoefficients& coeffs,
                     const KernelSpec& kern) {
    if (coeffs.x != basis.cutoff_x())
        throw config_error("i1_quadrature: smoothness cutoff differs between basis and coefficients");
    require_positive_scale(kern);
    if (coeffs.size() == 0) return 0.0;
    const double max_freq =
        (basis.logs().empty() ? 0.0 : basis.logs().back()) + coeffs.logs.back();
    const double t_cut = 8.0 / kern.lambda;
    guard_quadrature_work(kern.lambda, t_cut, std::max(max_freq, 1.0), basis.size() + coeffs.size());
    // Im(zeta_K |R|^2) is odd in t, so the symmetric integral is real: only
    // the even real part is integrated.
    auto piece = integrate_damped_range(
        [&](double t) { return eval_zeta_re(coeffs, t) * eval_r2(basis, t); }, kern.lambda, 0.0,
        t_cut, max_freq);
    return 2.0 * piece.value;
}

PerKResult per_k_inequality(const SmoothBasis& basis, std::int64_t k_val,
                            const WeightSystem& w, const KernelSpec& kern, int threads) {
    if (k_val < 1)
        throw std::domain_error("per_k_inequality: k must be >= 1, got " + std::to_string(k_val));
    const double i2 = shifted_pair_sum(basis, kern, 0.0, kNoCap, threads);
    const double qk = w.weight_of(k_val);
    PerKResult r;
    r.k = k_val;
    r.rhs = qk * i2;
    if (k_val == 1) {
        r.lhs = i2;
        return r;
    }
    r.lhs = shifted_pair_sum(basis, kern, std::log(static_cast<double>(k_val)), kNoCap, threads);
    if (qk > 0.0) {
        // the certified part of rhs comes from pairs m = r*k with m <= n_max
        const double rect = shifted_pair_sum(
            basis, kern, 0.0, static_cast<double>(basis.n_max()) / static_cast<double>(k_val),
            threads);
        r.slack = std::clamp(1.0 - rect / i2, 0.0, 1.0);
    }
    return r;
}

BoundParts closed_form_bound(const WeightSystem& w, const PrimeTable& primes) {
    const double x = w.cutoff_x();
    if (static_cast<double>(primes.limit()) < x)
        throw config_error("closed_form_bound: prime table limit below X");
    long double bound = 1.0L, mert = 1.0L, corr = 1.0L;
    for (std::size_t i = 0; i < primes.primes().size(); ++i) {
        const long double p = static_cast<long double>(primes.primes()[i]);
        if (p > static_cast<long double>(x)) break;
        const long double q = static_cast<long double>(w.prime_weight(primes.primes()[i]));
        bound *= 1.0L / (1.0L - q / p);
        mert *= p / (p - 1.0L);
        corr *= (p - 1.0L) / (p - q);
    }
    return {static_cast<double>(bound), static_cast<double>(mert), static_cast<double>(corr)};
}

double coefficient_sum(const ZetaCoefficients& coeffs, const WeightSystem& w, std::int64_t K) {
    if (K < 1) throw std::domain_error("coefficient_sum: K must be >= 1");
    if (coeffs.x != w.cutoff_x())
        throw config_error("coefficient_sum: smoothness cutoff differs from the weight system");
    NeumaierSum acc;
    for (std::size_t i = 0; i < coeffs.ks.size() && coeffs.ks[i] <= K; ++i)
        acc.add(coeffs.a[i] * w.weight_of(coeffs.ks[i]));
    return acc.value();
}

RangeDecomposition range_decomposition(const ResonatorConfig& cfg, const SmoothBasis& basis,
                                       const ZetaCoefficients& coeffs) {
    cfg.validate();
    if (cfg.T > 1e5)
        throw resource_error(
            "range_decomposition: T > 1e5 is quadrature-hostile; use closed-form moments");
    const double lambda = cfg.lambda;
    const double s1 = std::sqrt(cfg.T);
    const double s2 = cfg.T;
    const double t_end = s2 + 8.0 / lambda;

    const double freq2 = basis.logs().empty() ? 0.0 : basis.logs().back();
    const double freq1 = freq2 + (coeffs.size() ? coeffs.logs.back() : 0.0);
    guard_quadrature_work(lambda, t_end, std::max(freq1, 1.0), basis.size() + coeffs.size());

    RangeDecomposition out;
    out.t_inner = s1;
    out.t_outer = s2;

    auto r2 = [&](double t) { return eval_r2(basis, t); };
    auto zr2 = [&](double t) { return eval_zeta_re(coeffs, t) * eval_r2(basis, t); };

    auto fill = [&](const std::function<double(double)>& f, double freq, RangePiece& piece) {
        auto a = integrate_damped_range(f, lambda, 0.0, s1, freq);
        auto b = integrate_damped_range(f, lambda, s1, s2, freq);
        auto c = integrate_damped_range(f, lambda, s2, t_end, freq);
        piece.inner = 2.0 * a.value;
        piece.middle = 2.0 * b.value;
        piece.outer = 2.0 * c.value;
        piece.est_error = 2.0 * (a.est_error + b.est_error + c.est_error);
    };
    fill(r2, freq2, out.i2);
    fill(zr2, freq1, out.i1);
    return out;
}

MomentReport full_report(const ResonatorConfig& cfg, const SmoothBasis& basis,
                         const ZetaCoefficients& coeffs, const WeightSystem& w,
                         const KernelSpec& kern, const PrimeTable& primes,
                         MomentMethod method, int threads) {
    cfg.validate();
    if (basis.cutoff_x() != w.cutoff_x() || coeffs.x != w.cutoff_x())
        throw config_error("full_report: smoothness cutoff differs across inputs");

    MomentReport rep;
    rep.method = method;
    const BoundParts bp = closed_form_bound(w, primes);
    rep.closed_form_bound = bp.closed_form_bound;
    rep.mertens_part = bp.mertens_part;
    rep.correction_part = bp.correction_part;
    rep.truncation_deficit = basis.truncation_deficit();

    const double i2c = shifted_pair_sum(basis, kern, 0.0, kNoCap, threads);
    NeumaierSum i1_acc, coeff_acc, slack_acc;
    for (std::size_t i = 0; i < coeffs.ks.size(); ++i) {
        const std::int64_t k = coeffs.ks[i];
        const double ak = coeffs.a[i];
        const double lhs = k == 1 ? i2c
                                  : shifted_pair_sum(basis, kern, coeffs.logs[i], kNoCap, threads);
        i1_acc.add(ak * lhs);
        const double qk = w.weight_of(k);
        coeff_acc.add(ak * qk);
        if (qk > 0.0 && k > 1) {
            const double rect = shifted_pair_sum(
                basis, kern, 0.0, static_cast<double>(basis.n_max()) / static_cast<double>(k),
                threads);
            slack_acc.add(ak * qk * std::clamp(1.0 - rect / i2c, 0.0, 1.0));
        }
    }
    rep.coefficient_sum = coeff_acc.value();
    rep.slack = slack_acc.value();

    if (method == MomentMethod::quadrature) {
        rep.i2 = i2_quadrature(basis, kern);
        rep.i1 = {i1_quadrature(basis, coeffs, kern), 0.0};
    } else {
        rep.i2 = i2c;
        rep.i1 = {i1_acc.value(), 0.0};
    }
    rep.ratio = rep.i1.real() / rep.i2;

    const double lnln = std::log(std::log(cfg.T));
    rep.benchmark_theorem = kExpGamma * (lnln + std::log(lnln));
    return rep;
}

}  // namespace resonance
