#pragma once

#include <complex>

#include "qftkit/errors.hpp"

// Complex special functions needed by the transform stack: gamma/digamma,
// the Gauss hypergeometric function with argument transformations, Bessel J/Y,
// Struve H, and the associated Legendre function of the first kind off the cut.
//
// Accuracy envelope: relative error ~1e-12 for |z| <= 50 (gamma, digamma) and
// |z| <= 30 (Bessel/Struve), degrading gracefully outside. All functions use
// principal branches.

namespace qftkit {

using Complex = std::complex<double>;

// Which evaluation strategy produced the value. Useful when validating one
// regime against another.
enum class SfMethod {
    series,        // convergent ascending / Gauss series
    continuation,  // argument transformation or Taylor ODE continuation
    recurrence,    // backward (Miller) or forward recurrence
    asymptotic,    // optimally truncated divergent expansion
    closed_form,   // finite expression (terminating series, rational approx)
};

struct SpecFunResult {
    Complex value;
    double abs_err;    // estimated absolute error bound
    SfMethod method;
};

// Which side of a real-axis branch cut to evaluate on. `none` means the point
// is expected to lie off the cut; landing on it raises BranchCutError.
enum class CutSide { none, above, below };

// Gamma function, principal branch. Throws PoleError at nonpositive integers.
SpecFunResult gamma_c(Complex z);

// log Gamma, analytic continuation along the Lanczos/reflection evaluation
// (imaginary part is NOT reduced mod 2pi; exp(log_gamma_c(z)) == gamma_c(z)).
Complex log_gamma_c(Complex z);

// Digamma psi(z). Throws PoleError at nonpositive integers.
Complex digamma_c(Complex z);

// Gauss hypergeometric 2F1(a, b; c; z), principal branch, cut on [1, inf).
// Throws PoleError when c is a nonpositive integer not rescued by a
// terminating numerator, BranchCutError for real z >= 1 with side == none.
SpecFunResult hyp2f1(Complex a, Complex b, Complex c, Complex z,
                     CutSide side = CutSide::none);

// Bessel functions of real order and complex argument, principal branch
// (cut on the negative real axis through the (z/2)^nu prefactor).
SpecFunResult bessel_j(double nu, Complex z);
SpecFunResult bessel_y(double nu, Complex z);

// Struve function H_nu(z), same branch conventions as bessel_j.
SpecFunResult struve_h(double nu, Complex z);

// Associated Legendre function of the first kind P^mu_nu(z) for z off the cut
// (-inf, 1]:  ((z+1)/(z-1))^{mu/2} 2F1(-nu, nu+1; 1-mu; (1-z)/2) / Gamma(1-mu).
// Integer mu >= 1 (pole of 1/Gamma(1-mu)) is not supported here.
SpecFunResult legendre_p(double mu, double nu, Complex z);

}  // namespace qftkit
