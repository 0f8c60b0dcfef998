#pragma once

#include <functional>
#include <vector>

#include "qftkit/qcore.hpp"
#include "qftkit/quad.hpp"

namespace qftkit {

/// A density paired with the deformation index of the transform applied to it.
struct QFTInput {
    DensityFunction f;
    QIndex q;
};

/// Outcome of the integrability screen: the transform integrand must be L^1
/// on both half-lines. Exponents are fitted log-log tail slopes; -inf marks
/// a tail that is compactly supported or vanishes beyond the sample range.
struct LambdaCheck {
    bool member = false;
    double exponent_right = 0.0;
    double exponent_left = 0.0;
};

/// Power-law envelope |F(k)| <= scale * |k|^degree fitted on a contour.
struct GrowthFit {
    double scale = 0.0;
    int degree = 0;
    double slope = 0.0;
};

using SectionalFamily = std::function<SectionallyAnalytic(double)>;

/// Samples the transform integrand magnitude on geometric tail grids and fits
/// the decay exponent on each side. Membership requires integrable decay
/// (slope below -1) or a compact/vanishing tail on both half-lines.
LambdaCheck check_lambda_membership(const DensityFunction& f, QIndex q, Complex k);

/// One-sided deformed Fourier transform off the real axis:
///   Im k > 0:  integral over [0, inf)  of f(x) {1 + i(1-q) k x f(x)^(q-1)}^(1/(1-q)) dx
///   Im k < 0:  minus the same integral over (-inf, 0].
/// Throws DomainError on real k; boundary values belong to qft_real_cut.
TransformResult qft_complex(const QFTInput& in, Complex k, double tol = 1e-11);

/// Boundary jump F(k + i0) - F(k - i0) across the real axis, computed from
/// qft_complex on a shrinking ladder of offsets with Richardson extrapolation.
TransformResult qft_real_cut(const QFTInput& in, double k, double tol = 1e-11);

/// Packages the two qft_complex half-plane restrictions of one input.
/// growth_degree is left at zero; growth_check measures it when needed.
SectionallyAnalytic make_sectional(const QFTInput& in, double tol = 1e-11);

/// Contour inversion through the classical limit: for each eps in the ladder
/// evaluates (1/2pi) times the contour integral of family(1 + eps) against
/// exp(-i k x) and extrapolates eps -> 0. The grid form shares integrand
/// evaluations across all x through a per-leg cache.
std::vector<TransformResult> qft_inverse_grid(
    const SectionalFamily& family, const std::vector<double>& xs,
    const std::vector<double>& eps_ladder = {1e-2, 5e-3, 2.5e-3},
    ContourSpec base = {1.0, 0.0, 1e-7, false, 0.0});

TransformResult qft_inverse(const SectionalFamily& family, double x,
                            const std::vector<double>& eps_ladder = {1e-2, 5e-3,
                                                                     2.5e-3},
                            ContourSpec base = {1.0, 0.0, 1e-7, false, 0.0});

/// Cauchy-kernel representation (1/(2 pi i)) integral of f(t)/(t - z) dt over
/// the line; the jump across the axis recovers f at continuity points.
TransformResult dirac_density_rep(const DensityFunction& f, Complex z,
                                  double tol = 1e-10);

/// Fits log|F| against log|k| on the two contour legs and returns the
/// smallest admissible integer degree together with the matching scale.
/// Throws FitError when the samples grow faster than any fixed power.
GrowthFit growth_check(const SectionallyAnalytic& F, const ContourSpec& spec,
                       int max_degree = 8);

} // namespace qftkit
