#include "resonance/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "resonance/numeric.hpp"

namespace resonance {

double phi(double t) { return std::exp(-t * t); }

static void check_lambda(const KernelSpec& k) {
    if (!(k.lambda > 0.0) || !std::isfinite(k.lambda))
        throw std::domain_error("kernel: lambda must be positive, got " + std::to_string(k.lambda));
}

double phi_hat(double xi, const KernelSpec& k) {
    check_lambda(k);
    double u = xi / (2.0 * k.lambda);
    return kSqrtPi / k.lambda * std::exp(-u * u);
}

double log_phi_hat(double xi, const KernelSpec& k) {
    check_lambda(k);
    double u = xi / (2.0 * k.lambda);
    return std::log(kSqrtPi / k.lambda) - u * u;
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
// Cached per order; orders in this codebase stay tiny (<= 64).
struct GLRule {
    std::vector<double> x, w;
};

GLRule make_rule(int n) {
    GLRule r;
    r.x.resize(static_cast<std::size_t>(n));
    r.w.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double weight = 2.0 / ((1.0 - x * x) * dp * dp);
        r.x[static_cast<std::size_t>(i)] = -x;
        r.w[static_cast<std::size_t>(i)] = weight;
        r.x[static_cast<std::size_t>(n - 1 - i)] = x;
        r.w[static_cast<std::size_t>(n - 1 - i)] = weight;
    }
    return r;
}

const GLRule& rule_for(int n) {
    static std::vector<GLRule> cache(65);
    auto& slot = cache[static_cast<std::size_t>(n)];
    if (slot.x.empty()) slot = make_rule(n);
    return slot;
}

std::complex<double> one_pass(const std::function<std::complex<double>(double)>& f,
                              double a, double b, const GLRule& r, int panels) {
    NeumaierSum re, im;
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double mid = a + h * (p + 0.5);
        double half = 0.5 * h;
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            std::complex<double> v = f(mid + half * r.x[i]);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::runtime_error("quadrature: integrand not finite at t = " +
                                         std::to_string(mid + half * r.x[i]));
            re.add(half * r.w[i] * v.real());
            im.add(half * r.w[i] * v.imag());
        }
    }
    return {re.value(), im.value()};
}

}  // namespace

QuadratureResult integrate_gl(const std::function<std::complex<double>(double)>& f,
                              double a, double b, int points, int initial_panels,
                              double rel_tol) {
    if (points < 2 || points > 64)
        throw std::domain_error("quadrature: nodes per panel must be in [2, 64], got " +
                                std::to_string(points));
    if (!(b > a)) throw std::domain_error("quadrature: empty interval");
    const GLRule& r = rule_for(points);

    constexpr int kPanelCap = 1 << 17;
    int panels = initial_panels < 1 ? 1 : initial_panels;
    std::complex<double> prev = one_pass(f, a, b, r, panels);
    for (;;) {
        int next = panels * 2;
        std::complex<double> cur = one_pass(f, a, b, r, next);
        double diff = std::abs(cur - prev);
        double scale = std::abs(cur);
        if (diff <= rel_tol * (scale > 1.0 ? scale : 1.0) || next >= kPanelCap)
            return {cur, diff, next};
        prev = cur;
        panels = next;
    }
}

QuadratureResult integrate_damped(const std::function<std::complex<double>(double)>& f,
                                  const KernelSpec& k, double t_cut, int points) {
    check_lambda(k);
    if (!(t_cut > 0.0)) throw std::domain_error("quadrature: t_cut must be positive");
    double lam = k.lambda;
    auto g = [&](double t) { return f(t) * std::exp(-(lam * t) * (lam * t)); };
    // start with enough panels that each spans at most ~1/lambda
    int initial = static_cast<int>(std::min(2.0 * t_cut * lam + 8.0, 4096.0));
    return integrate_gl(g, -t_cut, t_cut, points, initial, 1e-11);
}

}  // namespace resonance
