#include "resonance/zeta.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "resonance/errors.hpp"
#include "resonance/numeric.hpp"
#include "resonance/simd.hpp"

namespace resonance {
namespace {

constexpr double kMaxHeight = 1e12;
constexpr std::size_t kMaxTerms = 1'000'000'000;  // per-evaluation work guard
constexpr std::size_t kTableCap = std::size_t{1} << 22;
constexpr std::size_t kBlock = 4096;

// B_{2k}/(2k)! for the Euler-Maclaurin corrections, k = 1..6.
constexpr double kBernFact[6] = {
    1.0 / 12.0,           -1.0 / 720.0,         1.0 / 30240.0,
    -1.0 / 1209600.0,     1.0 / 47900160.0,     -691.0 / 1307674368000.0,
};
// |B_14/14!| for the first omitted correction, which bounds the remainder.
constexpr double kBern14Fact = 7.0 / 523069747200.0;
constexpr int kCorrections = 6;

void split_log(std::uint64_t n, double& hi, double& lo) {
    const long double l = logl(static_cast<long double>(n));
    hi = static_cast<double>(l);
    lo = static_cast<double>(l - static_cast<long double>(hi));
}

// ln n split into a double pair (and 1/n), grown on demand behind a
// shared_ptr snapshot so readers never block or see a partial table.
class LogTable {
  public:
    struct Snapshot {
        std::vector<double> ln_hi, ln_lo, inv;  // index 0 holds n = 1
    };

    std::shared_ptr<const Snapshot> at_least(std::size_t count) {
        auto snap = std::atomic_load_explicit(&snap_, std::memory_order_acquire);
        if (snap && snap->ln_hi.size() >= count) return snap;
        std::lock_guard lock(grow_mutex_);
        snap = std::atomic_load_explicit(&snap_, std::memory_order_acquire);
        if (snap && snap->ln_hi.size() >= count) return snap;
        auto grown = std::make_shared<Snapshot>();
        const std::size_t target = std::max<std::size_t>(count, snap ? snap->ln_hi.size() * 2 : 1024);
        grown->ln_hi.resize(target);
        grown->ln_lo.resize(target);
        grown->inv.resize(target);
        if (snap) {
            std::copy(snap->ln_hi.begin(), snap->ln_hi.end(), grown->ln_hi.begin());
            std::copy(snap->ln_lo.begin(), snap->ln_lo.end(), grown->ln_lo.begin());
            std::copy(snap->inv.begin(), snap->inv.end(), grown->inv.begin());
        }
        for (std::size_t i = snap ? snap->ln_hi.size() : 0; i < target; ++i) {
            split_log(i + 1, grown->ln_hi[i], grown->ln_lo[i]);
            grown->inv[i] = 1.0 / static_cast<double>(i + 1);
        }
        std::atomic_store_explicit(&snap_, std::shared_ptr<const Snapshot>(std::move(grown)),
                                   std::memory_order_release);
        return std::atomic_load_explicit(&snap_, std::memory_order_acquire);
    }

  private:
    std::shared_ptr<const Snapshot> snap_;
    std::mutex grow_mutex_;
};

LogTable& log_table() {
    static LogTable table;
    return table;
}

// Magnitude of the first omitted Bernoulli correction, divided through by
// the alternating-tail factor, evaluated in logs so huge |t| cannot overflow.
double log_remainder_bound(std::complex<double> s, double log_n) {
    const double sigma = s.real();
    const double t = s.imag();
    double acc = std::log(kBern14Fact);
    for (int j = 0; j <= 2 * kCorrections; ++j)
        acc += 0.5 * std::log((sigma + j) * (sigma + j) + t * t);
    const int m = 2 * kCorrections + 1;
    acc += 0.5 * std::log((sigma + m) * (sigma + m) + t * t) - std::log(sigma + m);
    return acc - (sigma + 2 * kCorrections + 1) * log_n;
}

std::size_t choose_terms(std::complex<double> s, double target) {
    const double sigma = s.real();
    // Solve log_remainder_bound(s, ln N) <= ln(target/2), reserving the
    // other half of the budget for rounding.
    const double log_n = (log_remainder_bound(s, 0.0) - std::log(target * 0.5)) /
                         (sigma + 2 * kCorrections + 1);
    double n = std::ceil(std::exp(std::max(log_n, 0.0)));
    n = std::max(n, 16.0);
    if (!(n <= static_cast<double>(kMaxTerms)))
        throw resource_error("zeta: height/target needs more than 1e9 Dirichlet terms");
    return static_cast<std::size_t>(n);
}

// Rounding model: ln-table entries carry ~2^-64 relative error, so each
// phase is off by ~|t| ln n * 5.5e-20; summing coef ~ 1/n gives the ln^2
// factor.  The constant term covers coefficient rounding and accumulation.
double rounding_model(double t, double log_n) {
    return std::abs(t) * 6e-20 * (0.5 * log_n * log_n + 1.0) + 4e-16 * (log_n + 2.0);
}

std::complex<double> dirichlet_block(double t, std::span<const double> coef,
                                     std::span<const double> ln_hi, std::span<const double> ln_lo) {
    return simd::dirichlet_sum(t, coef, ln_hi, ln_lo);
}

// -log(1 - p^{-s}) for one Euler factor.
std::complex<double> euler_log_factor(double sigma, double t, double log_p) {
    const double mag = std::exp(-sigma * log_p);
    const double theta = -t * log_p;
    const std::complex<double> z{1.0 - mag * std::cos(theta), -mag * std::sin(theta)};
    return -std::log(z);
}

}  // namespace

void zeta_reserve(double t_max, double target_error) {
    const std::complex<double> s{1.0, std::abs(t_max)};
    const std::size_t n = choose_terms(s, target_error);
    log_table().at_least(std::min(n, kTableCap));
}

ZetaValue zeta(std::complex<double> s, double target_error) {
    const double sigma = s.real();
    const double t = s.imag();
    if (s == std::complex<double>(1.0, 0.0)) throw std::domain_error("zeta: pole at s = 1");
    if (!(sigma >= 0.5)) throw std::domain_error("zeta: Re(s) >= 1/2 required");
    if (!(std::abs(t) <= kMaxHeight)) throw std::out_of_range("zeta: |Im(s)| above 1e12");
    if (!(target_error > 0.0)) throw std::domain_error("zeta: target error must be positive");

    const std::size_t n_terms = choose_terms(s, target_error);
    const double log_n = std::log(static_cast<double>(n_terms));
    const double floor = rounding_model(t, log_n);
    if (floor > target_error)
        throw precision_error("zeta: target below double-precision floor at this height");

    auto snap = log_table().at_least(std::min(n_terms, kTableCap));
    const bool unit_sigma = sigma == 1.0;

    NeumaierSum re{}, im{};
    std::vector<double> coef_scratch;
    std::vector<double> hi_scratch, lo_scratch;
    std::size_t done = 0;
    while (done < n_terms) {
        const std::size_t in_table = done < snap->ln_hi.size()
                                         ? std::min(n_terms, snap->ln_hi.size()) - done
                                         : 0;
        std::complex<double> part;
        if (in_table > 0) {
            std::span hi(snap->ln_hi.data() + done, in_table);
            std::span lo(snap->ln_lo.data() + done, in_table);
            if (unit_sigma) {
                part = dirichlet_block(t, {snap->inv.data() + done, in_table}, hi, lo);
            } else {
                coef_scratch.resize(in_table);
                for (std::size_t i = 0; i < in_table; ++i)
                    coef_scratch[i] = std::exp(-sigma * (hi[i] + lo[i]));
                part = dirichlet_block(t, coef_scratch, hi, lo);
            }
            done += in_table;
        } else {
            const std::size_t count = std::min(kBlock, n_terms - done);
            hi_scratch.resize(count);
            lo_scratch.resize(count);
            coef_scratch.resize(count);
            for (std::size_t i = 0; i < count; ++i) {
                split_log(done + i + 1, hi_scratch[i], lo_scratch[i]);
                coef_scratch[i] = unit_sigma ? 1.0 / static_cast<double>(done + i + 1)
                                             : std::exp(-sigma * hi_scratch[i]);
            }
            part = dirichlet_block(t, coef_scratch, hi_scratch, lo_scratch);
            done += count;
        }
        re.add(part.real());
        im.add(part.imag());
    }
    std::complex<double> sum{re.value(), im.value()};

    // Integral, half-term, and Bernoulli corrections at the cut N.
    const double nd = static_cast<double>(n_terms);
    const std::complex<double> n_to_minus_s = std::exp(-s * log_n);
    const std::complex<double> one{1.0, 0.0};
    std::complex<double> value = sum + n_to_minus_s * nd / (s - one) - 0.5 * n_to_minus_s;
    std::complex<double> poch = s;                      // (s)(s+1)...(s+2k-2)
    std::complex<double> scale = n_to_minus_s / nd;     // N^{-s-2k+1}
    const double inv_n2 = 1.0 / (nd * nd);
    for (int k = 0; k < kCorrections; ++k) {
        value += kBernFact[k] * poch * scale;
        poch *= (s + std::complex<double>(2.0 * k + 1.0, 0.0)) *
                (s + std::complex<double>(2.0 * k + 2.0, 0.0));
        scale *= inv_n2;
    }

    const double bound = std::exp(log_remainder_bound(s, log_n));
    return {s, value, ZetaMethod::euler_maclaurin, bound + floor};
}

ZetaValue zeta_truncated(std::complex<double> s, double cutoff, const PrimeTable& primes) {
    if (!(s.real() > 0.0)) throw std::domain_error("zeta_truncated: Re(s) > 0 required");
    if (!(cutoff >= 0.0)) throw std::domain_error("zeta_truncated: cutoff must be nonnegative");
    if (cutoff > static_cast<double>(primes.limit()))
        throw config_error("zeta_truncated: cutoff beyond sieved range");

    const double sigma = s.real();
    const double t = s.imag();
    NeumaierSum log_re{}, log_im{};
    std::size_t used = 0;
    for (std::size_t i = 0; i < primes.primes().size(); ++i) {
        const double p = static_cast<double>(primes.primes()[i]);
        if (p > cutoff) break;
        const std::complex<double> factor = euler_log_factor(sigma, t, primes.logs()[i]);
        log_re.add(factor.real());
        log_im.add(factor.imag());
        ++used;
    }
    const std::complex<double> value = std::exp(std::complex<double>(log_re.value(), log_im.value()));
    const double model = static_cast<double>(used) * 3e-16 +
                         std::abs(t) * std::log(std::max(cutoff, 2.0)) * 1.2e-16;
    return {s, value, ZetaMethod::euler_product, model * std::abs(value)};
}

std::complex<double> zeta_alternating(std::complex<double> s) {
    const double sigma = s.real();
    const double t = s.imag();
    if (s == std::complex<double>(1.0, 0.0))
        throw std::domain_error("zeta_alternating: pole at s = 1");
    if (!(sigma >= 0.5 && sigma <= 4.0))
        throw std::domain_error("zeta_alternating: Re(s) in [1/2, 4] required");
    if (!(std::abs(t) <= 2e4)) throw std::out_of_range("zeta_alternating: |Im(s)| above 2e4");

    // Direct partial sums until the term phase advances by less than 1/2
    // per step, then a binomial average of a window of partial sums: each
    // averaging pass damps the surviving oscillation by sin(|t|/2n) < 1/4.
    const std::size_t start = static_cast<std::size_t>(2.0 * std::abs(t)) + 32;
    constexpr std::size_t kWindow = 64;
    const long double sig_l = sigma, t_l = t;
    std::complex<long double> partial{0.0L, 0.0L};
    std::vector<std::complex<long double>> window;
    window.reserve(kWindow);
    for (std::size_t n = 1; n <= start + kWindow; ++n) {
        const long double ln = logl(static_cast<long double>(n));
        const long double mag = expl(-sig_l * ln);
        const long double phase = -t_l * ln;
        std::complex<long double> term{mag * cosl(phase), mag * sinl(phase)};
        if (n % 2 == 0) term = -term;
        partial += term;
        if (n > start) window.push_back(partial);
    }
    for (std::size_t width = window.size(); width > 1; --width)
        for (std::size_t i = 0; i + 1 < width; ++i)
            window[i] = (window[i] + window[i + 1]) * 0.5L;
    const std::complex<long double> eta = window[0];

    const std::complex<double> factor =
        1.0 - std::exp((1.0 - s) * std::log(std::complex<double>(2.0, 0.0)));
    if (std::abs(factor) < 1e-6)
        throw precision_error("zeta_alternating: degenerate near 2^{1-s} = 1");
    return std::complex<double>(static_cast<double>(eta.real()), static_cast<double>(eta.imag())) /
           factor;
}

std::vector<double> lemma1_deviation(double t, double T, std::span<const double> cutoffs,
                                     const PrimeTable& primes) {
    if (!(T > 1.0)) throw std::domain_error("lemma1_deviation: T > 1 required");
    const double lo = std::pow(T, 0.1);
    if (!(std::abs(t) >= lo && std::abs(t) <= T))
        throw std::domain_error("lemma1_deviation: height outside [T^{1/10}, T]");
    if (cutoffs.empty()) throw std::domain_error("lemma1_deviation: no cutoffs given");
    for (std::size_t i = 0; i + 1 < cutoffs.size(); ++i)
        if (!(cutoffs[i] < cutoffs[i + 1]))
            throw std::domain_error("lemma1_deviation: cutoffs must be strictly ascending");
    if (cutoffs.back() > static_cast<double>(primes.limit()))
        throw config_error("lemma1_deviation: cutoff beyond sieved range");

    const std::complex<double> s{1.0, t};
    const std::complex<double> reference = zeta(s, 1e-10).value;

    // One ascending pass over the primes, snapshotting the running product
    // at each requested cutoff.
    std::vector<double> out;
    out.reserve(cutoffs.size());
    NeumaierSum log_re{}, log_im{};
    std::size_t pi = 0;
    for (double cutoff : cutoffs) {
        for (; pi < primes.primes().size(); ++pi) {
            const double p = static_cast<double>(primes.primes()[pi]);
            if (p > cutoff) break;
            const std::complex<double> factor = euler_log_factor(1.0, t, primes.logs()[pi]);
            log_re.add(factor.real());
            log_im.add(factor.imag());
        }
        const std::complex<double> truncated =
            std::exp(std::complex<double>(log_re.value(), log_im.value()));
        out.push_back(std::abs(reference / truncated - 1.0));
    }
    return out;
}

}  // namespace resonance
