#include "resonance/hunter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "resonance/errors.hpp"
#include "resonance/numeric.hpp"
#include "resonance/parallel.hpp"
#include "resonance/rng.hpp"
#include "resonance/simd.hpp"
#include "resonance/zeta.hpp"

namespace resonance {
namespace {

constexpr double kDerivTol = 1e-8;
constexpr double kLn2 = 0.69314718055994530942;
constexpr std::size_t kGridChunk = std::size_t{1} << 20;
constexpr double kMaxGridPoints = 1e9;

struct Candidate {
    double t;
    double s;
};

bool better(const Candidate& a, const Candidate& b) {
    if (a.s != b.s) return a.s > b.s;
    return a.t < b.t;
}

// Safeguarded Newton on score' within [t0 - step, t0 + step]: keeps a
// derivative sign-change bracket and falls back to its midpoint whenever
// the Newton step escapes.  Never returns a point scoring below t0.
double refine_peak(const WeightSystem& w, double t0, double step, int iters, double lo,
                   double hi) {
    double a = std::max(lo, t0 - step);
    double b = std::min(hi, t0 + step);
    double ga = score_derivative(w, a);
    double gb = score_derivative(w, b);
    if (!(ga > 0.0 && gb < 0.0)) return t0;  // not an interior peak bracket

    double t = t0;
    double g = score_derivative(w, t);
    for (int i = 0; i < iters && std::abs(g) > kDerivTol; ++i) {
        if (g > 0.0)
            a = t;
        else
            b = t;
        const double h = score_second(w, t);
        double next = h < 0.0 ? t - g / h : a;
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        t = next;
        g = score_derivative(w, t);
    }
    return score(w, t) >= score(w, t0) ? t : t0;
}

HuntResult evaluate_heights(const ResonatorConfig& cfg, const WeightSystem& w,
                            const std::vector<double>& heights, int threads) {
    HuntResult out;
    out.records.resize(heights.size());
    if (!heights.empty()) {
        zeta_reserve(cfg.T, 1e-6);
        parallel_chunks(heights.size(), 1, threads, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                HuntRecord& r = out.records[i];
                r.t = heights[i];
                r.log_abs_r = score(w, r.t);
                r.zeta_abs = std::abs(zeta({1.0, r.t}, 1e-6).value);
                const double lnln = std::log(std::log(r.t));
                r.benchmark_levinson = kExpGamma * lnln;
                r.benchmark_theorem = kExpGamma * (lnln + std::log(lnln));
            }
        });
    }
    std::sort(out.records.begin(), out.records.end(), [](const HuntRecord& a, const HuntRecord& b) {
        if (a.zeta_abs != b.zeta_abs) return a.zeta_abs > b.zeta_abs;
        return a.t < b.t;
    });
    out.budget_used = static_cast<std::int64_t>(out.records.size());
    for (std::size_t i = 0; i < out.records.size(); ++i)
        out.records[i].budget_used = static_cast<std::int64_t>(i + 1);
    out.exhausted_warning = out.records.empty();
    return out;
}

void check_hunt_prereqs(const ResonatorConfig& cfg, std::int64_t budget) {
    cfg.validate();
    if (!(cfg.T <= 1e12))
        throw std::out_of_range("hunt: T above the supported zeta range (1e12)");
    if (budget < 1) throw std::domain_error("hunt: budget must be >= 1");
}

}  // namespace

double score(const WeightSystem& w, double t) {
    auto qs = w.weights();
    auto logs = w.prime_logs();
    NeumaierSum acc;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const double q = qs[i];
        const double c = std::cos(t * logs[i]);
        acc.add(std::log(std::fma(2.0 * q, 1.0 - c, (1.0 - q) * (1.0 - q))));
    }
    return -0.5 * acc.value();
}

double score_derivative(const WeightSystem& w, double t) {
    auto qs = w.weights();
    auto logs = w.prime_logs();
    NeumaierSum acc;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const double q = qs[i];
        const double th = t * logs[i];
        const double f = std::fma(2.0 * q, 1.0 - std::cos(th), (1.0 - q) * (1.0 - q));
        acc.add(-q * logs[i] * std::sin(th) / f);
    }
    return acc.value();
}

double score_second(const WeightSystem& w, double t) {
    auto qs = w.weights();
    auto logs = w.prime_logs();
    NeumaierSum acc;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const double q = qs[i];
        const double th = t * logs[i];
        const double c = std::cos(th);
        const double s = std::sin(th);
        const double f = std::fma(2.0 * q, 1.0 - c, (1.0 - q) * (1.0 - q));
        acc.add(-q * logs[i] * logs[i] * (c * f - 2.0 * q * s * s) / (f * f));
    }
    return acc.value();
}

std::vector<double> find_peaks(const WeightSystem& w, double lo, double hi, double grid_step,
                               int refine_iters, std::size_t top_k, std::uint64_t seed,
                               int threads) {
    if (!(lo > 0.0 && hi > lo)) throw std::domain_error("find_peaks: need 0 < lo < hi");
    if (!(grid_step > 0.0)) throw std::domain_error("find_peaks: grid_step must be positive");
    if (top_k == 0) return {};
    if (w.active_primes().empty()) return {};  // score is flat, nothing to rank

    SplitMix64 rng(seed);
    const double start = lo + rng.uniform(0.0, grid_step);
    const double span = (hi - start) / grid_step;
    if (!(span >= 0.0)) return {};
    if (span > kMaxGridPoints)
        throw resource_error("find_peaks: grid would exceed 1e9 points; raise grid_step");
    const std::size_t count = static_cast<std::size_t>(span) + 1;
    if (count < 3) return {};

    // Per-chunk scan: score the chunk plus one margin point on each side,
    // keep its top_k interior local maxima; merge chunk lists afterwards in
    // a fixed order so the result ignores the thread count.
    const std::size_t n_chunks = (count + kGridChunk - 1) / kGridChunk;
    std::vector<std::vector<Candidate>> chunk_best(n_chunks);
    parallel_chunks(count, kGridChunk, threads, [&](std::size_t cb, std::size_t ce) {
        const std::size_t from = cb > 0 ? cb - 1 : cb;
        const std::size_t to = std::min(count, ce + 1);
        std::vector<double> s(to - from);
        simd::resonator_log_abs_grid(w.weights(), w.prime_logs(),
                                     start + static_cast<double>(from) * grid_step, grid_step, s);
        std::vector<Candidate>& best = chunk_best[cb / kGridChunk];
        for (std::size_t j = std::max<std::size_t>(cb, 1); j < ce && j + 1 < count; ++j) {
            const std::size_t l = j - from;
            if (s[l] > s[l - 1] && s[l] >= s[l + 1])
                best.push_back({start + static_cast<double>(j) * grid_step, s[l]});
        }
        if (best.size() > top_k) {
            std::nth_element(best.begin(), best.begin() + static_cast<std::ptrdiff_t>(top_k),
                             best.end(), better);
            best.resize(top_k);
        }
    });

    std::vector<Candidate> all;
    for (auto& cb : chunk_best) all.insert(all.end(), cb.begin(), cb.end());
    std::sort(all.begin(), all.end(), better);
    if (all.size() > top_k) all.resize(top_k);

    std::vector<Candidate> refined(all.size());
    parallel_chunks(all.size(), 16, threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const double t = refine_peak(w, all[i].t, grid_step, refine_iters, lo, hi);
            refined[i] = {t, score(w, t)};
        }
    });
    std::sort(refined.begin(), refined.end(), better);

    std::vector<double> out;
    out.reserve(refined.size());
    for (const Candidate& c : refined) out.push_back(c.t);
    return out;
}

HuntResult hunt(const ResonatorConfig& cfg, std::int64_t budget, std::uint64_t seed,
                const PrimeTable& primes, int threads) {
    check_hunt_prereqs(cfg, budget);
    const WeightSystem w(cfg, primes);
    const double lo = std::sqrt(cfg.T);
    const double hi = cfg.T;
    const double step = (kTwoPi / kLn2) / 64.0;  // fastest phase, 64 samples per period
    auto peaks = find_peaks(w, lo, hi, step, 48, static_cast<std::size_t>(budget), seed, threads);
    return evaluate_heights(cfg, w, peaks, threads);
}

HuntResult random_baseline(const ResonatorConfig& cfg, std::int64_t budget, std::uint64_t seed,
                           const PrimeTable& primes, int threads) {
    check_hunt_prereqs(cfg, budget);
    const WeightSystem w(cfg, primes);
    SplitMix64 rng(seed);
    std::vector<double> heights(static_cast<std::size_t>(budget));
    for (double& t : heights) t = rng.uniform(std::sqrt(cfg.T), cfg.T);
    return evaluate_heights(cfg, w, heights, threads);
}

}  // namespace resonance
