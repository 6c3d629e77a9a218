#pragma once

#include <functional>
#include <string>

#include "vdc/residue.hpp"

namespace vdc {

// A smooth compactly supported real weight. The evaluator must vanish
// outside [s0, s1]; smoothness is documented by the tag and spot-checked in
// the tests, not enforced here.
struct TestFunction {
    std::string name;
    double s0 = 0.0;
    double s1 = 1.0;
    std::function<double(double)> eval;
    std::string smoothness_class;

    double operator()(double t) const { return eval(t); }

    // V(t) = exp(1 - 1/(1 - u^2)) with u = 2(t-s0)/(s1-s0) - 1 on (s0, s1),
    // 0 outside. Default support [1, 2].
    static TestFunction bump(double s0 = 1.0, double s1 = 2.0);

    // 1.5 * bump on [1/2, 5/2]: nonnegative everywhere and >= 1 on [1, 2],
    // the majorant shape the Cauchy-Schwarz step needs.
    static TestFunction majorant();
};

// Numerical Fourier transform V_hat(xi) = int V(t) e(-t xi) dt over the
// support. Quadrature: composite Gauss-Legendre with 32-point panels,
// doubling the panel count until two successive values agree to 1e-12, with
// a total node cap of 2^16. The starting panel count scales with |xi| times
// the support width so the oscillation is resolved before convergence is
// tested. Throws quadrature_not_converged at the cap.
cplx continuous_ft(const TestFunction& V, double xi);

// Same quadrature applied to V itself (the xi = 0 integrand without the
// phase); used by tests as an independent route to V_hat(0).
double integrate(const TestFunction& V);

// One fixed-resolution pass (no refinement) with the given panel count.
cplx continuous_ft_fixed(const TestFunction& V, double xi, int panels);

} // namespace vdc
