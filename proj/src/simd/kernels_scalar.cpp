// Reference kernels: straight loops over libm.  These define the semantics
// the AVX2 variants are tested against.

#include <cmath>

#include "kernels_common.hpp"
#include "resonance/numeric.hpp"

namespace resonance::simd::detail {

void grid_scalar(const double* q, const double* lp, std::size_t np,
                 double t0, double dt, double* out, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        double t = t0 + static_cast<double>(j) * dt;
        double acc = 0.0;
        for (std::size_t i = 0; i < np; ++i) {
            double c = std::cos(t * lp[i]);
            double omq = 1.0 - q[i];
            // |1 - q e^{i theta}|^2 = (1-q)^2 + 2q(1 - cos theta)
            double f = std::fma(2.0 * q[i], 1.0 - c, omq * omq);
            acc += std::log(f);
        }
        out[j] = -0.5 * acc;
    }
}

double gauss_scalar(const double* coef, const double* x, std::size_t n, double inv4l2) {
    NeumaierSum s;
    for (std::size_t i = 0; i < n; ++i) {
        double w = -(x[i] * x[i]) * inv4l2;
        if (w <= kExpPrune) continue;
        s.add(coef[i] * std::exp(w));
    }
    return s.value();
}

std::complex<double> dirichlet_scalar(double t, const double* coef,
                                      const double* ln_hi, const double* ln_lo,
                                      std::size_t n) {
    NeumaierSum re, im;
    for (std::size_t i = 0; i < n; ++i) {
        double r = phase_mod_2pi(t, ln_hi[i], ln_lo[i]);
        re.add(coef[i] * std::cos(r));
        im.add(coef[i] * -std::sin(r));
    }
    return {re.value(), im.value()};
}

}  // namespace resonance::simd::detail
