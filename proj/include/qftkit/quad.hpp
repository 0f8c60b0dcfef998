#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "qftkit/errors.hpp"

namespace qftkit {

using Complex = std::complex<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Hard cap on integrand evaluations per quadrature call.
constexpr long kEvalBudget = 2'000'000;

enum class DecayClass { exponential, algebraic, compact };

/// A real density (or more general weight) on the line together with the
/// qualitative tail information the quadrature maps need.
struct DensityFunction {
    std::function<double(double)> eval;
    double support_lo = -kInf;
    double support_hi = kInf;
    DecayClass decay = DecayClass::exponential;
    double algebraic_exponent = 0.0; // |f| ~ |x|^-p for DecayClass::algebraic
    std::string label;
};

struct TransformResult {
    Complex value{0.0, 0.0};
    double abs_err = 0.0;
    long n_evals = 0;
};

/// Boundary values of a sectionally analytic function: one analytic piece per
/// half-plane. growth_degree is the polynomial bound exponent |F(k)| <= C|k|^p.
struct SectionallyAnalytic {
    std::function<Complex(Complex)> upper; // Im k > 0
    std::function<Complex(Complex)> lower; // Im k < 0
    int growth_degree = 0;
};

/// Geometry of the two-leg inversion contour: legs parallel to the real axis
/// at heights +zeta (traversed left to right) and -zeta (right to left),
/// truncated at |Re k| = T with T doubled until the result stabilizes.
/// When the weight is known to be exp(-i k x), setting fourier_weight enables
/// closed-form completion of the slowly decaying leg tails.
struct ContourSpec {
    double zeta = 1.0;
    double truncation = 0.0; // initial half-width; 0 selects 10*max(1, 1/zeta)
    double tol = 1e-8;
    bool fourier_weight = false;
    double fourier_x = 0.0;
};

enum class HalfLine { positive, negative };

/// Adaptive Gauss-Kronrod integration of a complex-valued integrand over a
/// finite interval. tol is an absolute error target. Throws ConvergenceError
/// (carrying the partial value) when the evaluation budget runs out first.
TransformResult integrate_interval(const std::function<Complex(double)>& g,
                                   double a, double b, double tol);

/// Half-line integral of g over [0, inf) or (-inf, 0]. The decay class picks
/// the compactifying change of variable: an exponential map for exponentially
/// decaying tails, t = u/(1-u) for algebraic ones. A finite support_cut
/// restricts the integration range instead (used for compact supports).
TransformResult integrate_halfline(const std::function<Complex(double)>& g,
                                   HalfLine side, DecayClass decay, double tol,
                                   double support_cut = kInf);

/// Two-leg contour integral of F against a weight, oriented with the upper
/// leg left-to-right and the lower leg right-to-left:
///   integral over (upper leg) F(k) w(k) dk  -  integral over (lower leg, as
///   a left-to-right integral) F(k) w(k) dk.
/// Truncation is widened by doubling until the added wings fall below tol/10;
/// with fourier_weight the remaining tails are completed in closed form from
/// a per-leg fit of F to A/k + B/k^2.
TransformResult integrate_contour(const SectionallyAnalytic& F,
                                  const std::function<Complex(Complex)>& weight,
                                  const ContourSpec& spec);

struct Extrapolated {
    Complex value{0.0, 0.0};
    double abs_err = 0.0;
};

/// Polynomial extrapolation of ladder values v(h_j) to h = 0 (Neville tableau).
/// The ladder must be positive and strictly decreasing.
Extrapolated richardson_zero(const std::vector<double>& h, const std::vector<Complex>& v);

} // namespace qftkit
