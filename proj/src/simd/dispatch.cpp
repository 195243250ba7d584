#include "resonance/simd.hpp"

#include <cstdlib>
#include <string>

#include "kernels_common.hpp"
#include "resonance/errors.hpp"

namespace resonance::simd {

namespace {

bool cpu_has_avx2() {
#if RESONANCE_HAVE_AVX2_TU
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Mode detect() {
    if (const char* env = std::getenv("RESONANCE_SIMD")) {
        std::string v(env);
        if (v == "scalar") return Mode::scalar;
        if (v == "avx2" && cpu_has_avx2()) return Mode::avx2;
        // "auto" or anything unusable falls through to detection
    }
    return cpu_has_avx2() ? Mode::avx2 : Mode::scalar;
}

Mode& mode_ref() {
    static Mode m = detect();
    return m;
}

}  // namespace

Mode active() { return mode_ref(); }

bool supported(Mode m) {
    return m == Mode::scalar || (m == Mode::avx2 && cpu_has_avx2());
}

void force(Mode m) {
    if (!supported(m))
        throw config_error(std::string("simd mode '") + name(m) + "' not available on this host");
    mode_ref() = m;
}

const char* name(Mode m) {
    return m == Mode::avx2 ? "avx2" : "scalar";
}

void resonator_log_abs_grid(std::span<const double> weights,
                            std::span<const double> logp,
                            double t0, double dt, std::span<double> out) {
#if RESONANCE_HAVE_AVX2_TU
    if (active() == Mode::avx2) {
        detail::grid_avx2(weights.data(), logp.data(), weights.size(), t0, dt,
                          out.data(), out.size());
        return;
    }
#endif
    detail::grid_scalar(weights.data(), logp.data(), weights.size(), t0, dt,
                        out.data(), out.size());
}

double gaussian_weighted_sum(std::span<const double> coef,
                             std::span<const double> x,
                             double inv_four_lambda_sq) {
#if RESONANCE_HAVE_AVX2_TU
    if (active() == Mode::avx2)
        return detail::gauss_avx2(coef.data(), x.data(), coef.size(), inv_four_lambda_sq);
#endif
    return detail::gauss_scalar(coef.data(), x.data(), coef.size(), inv_four_lambda_sq);
}

std::complex<double> dirichlet_sum(double t,
                                   std::span<const double> coef,
                                   std::span<const double> ln_hi,
                                   std::span<const double> ln_lo) {
#if RESONANCE_HAVE_AVX2_TU
    if (active() == Mode::avx2)
        return detail::dirichlet_avx2(t, coef.data(), ln_hi.data(), ln_lo.data(), coef.size());
#endif
    return detail::dirichlet_scalar(t, coef.data(), ln_hi.data(), ln_lo.data(), coef.size());
}

}  // namespace resonance::simd
