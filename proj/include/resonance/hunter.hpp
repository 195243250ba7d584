#pragma once

#include <cstdint>
#include <vector>

#include "resonance/primes.hpp"
#include "resonance/resonator.hpp"

namespace resonance {

struct HuntRecord {
    double t = 0.0;
    double log_abs_r = 0.0;
    double zeta_abs = 0.0;
    double benchmark_levinson = 0.0;  // e^gamma ln ln t
    double benchmark_theorem = 0.0;   // e^gamma (ln ln t + ln ln ln t)
    std::int64_t budget_used = 0;     // zeta evaluations spent through this record
};

struct HuntResult {
    std::vector<HuntRecord> records;  // sorted by zeta_abs descending
    std::int64_t budget_used = 0;
    bool exhausted_warning = false;   // no candidate was affordable
};

// log |R(t)|, evaluated as -1/2 sum_p ln(1 - 2 q_p cos(t ln p) + q_p^2).
// Peaks where the phases t ln p sit near multiples of 2 pi.
double score(const WeightSystem& w, double t);
double score_derivative(const WeightSystem& w, double t);
double score_second(const WeightSystem& w, double t);

// Top local maximizers of score on [lo, hi]: a uniform grid scan (start
// jittered within one step by the seed) followed by safeguarded Newton on
// the derivative until |score'| <= 1e-8.  Sorted by descending score,
// ties by ascending t.  Deterministic for a fixed seed and independent of
// the thread count.
std::vector<double> find_peaks(const WeightSystem& w, double lo, double hi, double grid_step,
                               int refine_iters, std::size_t top_k, std::uint64_t seed,
                               int threads = 0);

// Evaluates zeta(1+it) at up to `budget` resonator peaks in [sqrt(T), T].
HuntResult hunt(const ResonatorConfig& cfg, std::int64_t budget, std::uint64_t seed,
                const PrimeTable& primes, int threads = 0);

// Same budget spent on uniform random heights instead of resonator peaks;
// the control arm for judging the guided search.
HuntResult random_baseline(const ResonatorConfig& cfg, std::int64_t budget, std::uint64_t seed,
                           const PrimeTable& primes, int threads = 0);

}  // namespace resonance
