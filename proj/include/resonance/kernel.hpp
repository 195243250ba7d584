#pragma once

#include <complex>
#include <functional>

namespace resonance {

// Gaussian damping kernel Phi(t) = e^{-t^2}, applied at scale lambda:
// the weight in every smoothed moment is Phi(lambda t).  Its Fourier
// transform stays strictly positive, which is what makes dropping
// off-diagonal terms from the moment sums a one-sided operation.
struct KernelSpec {
    double lambda = 1.0;
};

double phi(double t);

// phi_hat(xi; lambda) = integral e^{-(lambda t)^2} e^{-i xi t} dt
//                     = (sqrt(pi)/lambda) e^{-xi^2/(4 lambda^2)}
// Underflows to 0 in double once xi^2/(4 lambda^2) > ~745; use log_phi_hat
// when only positivity or magnitude ordering matters.
double phi_hat(double xi, const KernelSpec& k);
double log_phi_hat(double xi, const KernelSpec& k);

struct QuadratureResult {
    std::complex<double> value;
    double est_error = 0.0;   // |value - half-panel refinement|
    int panels = 0;           // panel count of the accepted pass
};

// integral_{-t_cut}^{t_cut} f(t) e^{-(lambda t)^2} dt by composite
// Gauss-Legendre.  points = nodes per panel (2..64).  Panels are doubled
// until two passes agree or the panel cap is hit; the difference of the
// last two passes is reported as est_error.  Throws on non-finite f.
QuadratureResult integrate_damped(const std::function<std::complex<double>(double)>& f,
                                  const KernelSpec& k, double t_cut, int points);

// Same scheme for a plain integral over [a, b] with an explicit starting
// panel count (internal building block, also used by the moment splits).
QuadratureResult integrate_gl(const std::function<std::complex<double>(double)>& f,
                              double a, double b, int points, int initial_panels,
                              double rel_tol);

}  // namespace resonance
