#include "resonance/resonator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "resonance/errors.hpp"
#include "resonance/numeric.hpp"

namespace resonance {

ResonatorConfig ResonatorConfig::make(double T, const Overrides& o) {
    ResonatorConfig c;
    c.T = T;
    if (!(T > kEE))
        throw std::domain_error("resonator: T must exceed e^e (~15.154), got " + std::to_string(T));
    double lnT = std::log(T);
    c.X = o.X.value_or(lnT * std::log(lnT) / 6.0);
    double y_exp = std::pow(lnT, 10.0);  // exponent of the nominal cutoff exp((ln T)^10)
    double y_default = y_exp < std::log(1e8) ? std::exp(y_exp) : 1e8;
    c.Y = o.Y.value_or(y_default);
    c.lambda = o.lambda.value_or(lnT / T);
    c.smooth_limit = o.smooth_limit.value_or(1000);
    if (c.Y < c.X) c.Y = c.X;
    c.validate();
    return c;
}

void ResonatorConfig::validate() const {
    if (!(T > kEE))
        throw std::domain_error("resonator: T must exceed e^e, got " + std::to_string(T));
    if (!(X > 0.0) || !std::isfinite(X))
        throw config_error("resonator: X must be positive and finite");
    if (!(Y >= X))
        throw config_error("resonator: Y must be >= X");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw config_error("resonator: lambda must be positive and finite");
    if (smooth_limit < 1)
        throw config_error("resonator: smooth_limit must be >= 1");
}

WeightSystem::WeightSystem(const ResonatorConfig& cfg, const PrimeTable& primes) : cfg_(cfg) {
    cfg_.validate();
    if (static_cast<double>(primes.limit()) < cfg_.X)
        throw config_error("weights: prime table limit " + std::to_string(primes.limit()) +
                           " below X = " + std::to_string(cfg_.X));
    NeumaierSum lr0;
    const auto& ps = primes.primes();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        double p = static_cast<double>(ps[i]);
        if (p > cfg_.X) break;
        double q = 1.0 - p / cfg_.X;
        if (q <= 0.0) continue;  // p == X exactly
        primes_.push_back(ps[i]);
        weights_.push_back(q);
        logs_.push_back(primes.logs()[i]);
        lr0.add(std::log(cfg_.X / p));
    }
    log_r0_ = lr0.value();
}

double WeightSystem::prime_weight(std::int64_t p) const {
    if (p < 2) throw std::domain_error("prime_weight: p must be a prime >= 2");
    double pd = static_cast<double>(p);
    return pd <= cfg_.X ? 1.0 - pd / cfg_.X : 0.0;
}

double WeightSystem::weight_of(std::int64_t n) const {
    if (n < 1) throw std::domain_error("weight_of: n must be >= 1, got " + std::to_string(n));
    double q = 1.0;
    std::int64_t rest = n;
    for (std::size_t i = 0; i < primes_.size() && rest > 1; ++i) {
        std::int64_t p = primes_[i];
        if (p * p > rest) break;
        while (rest % p == 0) {
            rest /= p;
            q *= weights_[i];
        }
    }
    if (rest > 1) {
        // leftover is prime; weighted only if it is one of the stored primes
        auto it = std::lower_bound(primes_.begin(), primes_.end(), rest);
        if (it == primes_.end() || *it != rest) return 0.0;
        q *= weights_[static_cast<std::size_t>(it - primes_.begin())];
    }
    return q;
}

std::complex<double> WeightSystem::eval_euler(double t) const {
    std::complex<double> r{1.0, 0.0};
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        double th = t * logs_[i];
        std::complex<double> factor =
            1.0 / (1.0 - weights_[i] * std::complex<double>(std::cos(th), std::sin(th)));
        r *= factor;
    }
    return r;
}

SmoothBasis SmoothBasis::build(const WeightSystem& w, std::int64_t n_max,
                               std::size_t max_entries) {
    if (n_max < 1)
        throw std::domain_error("smooth basis: n_max must be >= 1, got " + std::to_string(n_max));
    SmoothBasis b;
    b.x_ = w.cutoff_x();
    b.n_max_ = n_max;

    auto ps = w.active_primes();
    auto qs = w.weights();
    std::vector<Entry> entries;
    entries.push_back({1, 1.0});

    // depth-first over exponent vectors; value stays <= n_max so no overflow
    struct Frame {
        std::size_t idx;
        std::int64_t val;
        double q;
    };
    std::vector<Frame> stack;
    stack.push_back({0, 1, 1.0});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        for (std::size_t i = f.idx; i < ps.size(); ++i) {
            if (ps[i] > n_max / f.val) break;
            std::int64_t v = f.val * ps[i];
            double q = f.q * qs[i];
            if (entries.size() >= max_entries)
                throw resource_error("smooth basis: entry budget " + std::to_string(max_entries) +
                                     " exceeded below n_max = " + std::to_string(n_max));
            entries.push_back({v, q});
            stack.push_back({i, v, q});
        }
    }

    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.n < b.n; });

    b.values_.reserve(entries.size());
    b.weights_.reserve(entries.size());
    b.logs_.reserve(entries.size());
    NeumaierSum qsum;
    for (const Entry& e : entries) {
        b.values_.push_back(e.n);
        b.weights_.push_back(e.q);
        b.logs_.push_back(std::log(static_cast<double>(e.n)));
        qsum.add(e.q);
    }
    b.weight_sum_ = qsum.value();
    double deficit = std::exp(w.log_r0()) - b.weight_sum_;
    b.deficit_ = deficit > 0.0 ? deficit : 0.0;
    return b;
}

std::complex<double> SmoothBasis::eval_series(double t) const {
    NeumaierSum re, im;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        double th = t * logs_[i];
        re.add(weights_[i] * std::cos(th));
        im.add(weights_[i] * std::sin(th));
    }
    return {re.value(), im.value()};
}

double sup_bound_check(const WeightSystem& w, const PrimeTable& primes) {
    const ResonatorConfig& cfg = w.config();
    double bound = primes.sup_log_bound(cfg.X >= 2.0 ? cfg.X : 2.0);
    double lr0 = w.log_r0();
    if (lr0 > bound + 1e-9)
        throw std::logic_error("sup_bound_check: log R(0) exceeds prime bound");
    return 2.0 * bound / std::log(cfg.T);
}

}  // namespace resonance
