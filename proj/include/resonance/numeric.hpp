#pragma once

#include <cmath>
#include <cstddef>

namespace resonance {

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kExpGamma   = 1.78107241799019798524;  // e^gamma
inline constexpr double kSqrtPi     = 1.77245385090551602730;
inline constexpr double kTwoPi      = 6.28318530717958647693;
inline constexpr double kEE         = 15.15426224147926418976; // e^e

// Neumaier variant of Kahan summation: tracks a running compensation so the
// result is correct to a few ulps independent of term ordering and count.
struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    void merge(const NeumaierSum& o) {
        add(o.sum);
        comp += o.comp;
    }
    double value() const { return sum + comp; }
};

// Error-free transforms. two_prod needs a fused multiply-add.
inline void two_sum(double a, double b, double& hi, double& lo) {
    hi = a + b;
    double v = hi - a;
    lo = (a - (hi - v)) + (b - v);
}

inline void two_prod(double a, double b, double& hi, double& lo) {
    hi = a * b;
    lo = std::fma(a, b, -hi);
}

}  // namespace resonance
