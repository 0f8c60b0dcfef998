#pragma once

#include "qftkit/qft.hpp"
#include "qftkit/specfun.hpp"

namespace qftkit {

/// Truncation policy for the deformation series: keep powers of (q-1) up to
/// order_n, and refuse points where the underlying log expansion variable
/// |(1-q) k x f^(q-1)| reaches validity_radius.
struct SeriesTruncation {
    int order_n = 4;
    double validity_radius = 0.9;
};

/// First-order transform computed along two independent routes.
struct FirstOrderResult {
    TransformResult direct;   // quadrature of the expanded integrand
    Complex derivative_form;  // reassembled from derivatives of the classical side
    double consistency_gap;   // |direct - derivative_form|
};

/// Coefficient of (q-1)^n in the exponent expansion of the deformed kernel:
///   sum_{m=0}^{n} (n-m+1)^(m-1)/m! * (ikx)^(n-m+1) * ln^m f(x).
/// The m = 0 weight reads (n+1)^(-1).
Complex g_coeff(double x, Complex k, int n, double f_at_x);

/// Truncated n-fold product sum (1/n!) sum_{s=n}^{cutoff_s} (q-1)^s *
/// sum over compositions s_1+...+s_n = s of prod_j g_coeff(x,k,s_j,f).
/// Throws BudgetError when the composition count passes 1e5.
Complex l_term(double x, Complex k, int n, QIndex q, double f_at_x, int cutoff_s);

/// Deformed kernel as a degree-order_n polynomial in (q-1) times e^{ikx}:
///   e^{ikx} [1 + sum_{n=1}^{order} l_term(x,k,n,q,f,order)].
/// Converges to q_exponential_c(i k x f^(q-1), q) as the order grows inside
/// the validity region; ValidityError outside it.
Complex h_series(double x, Complex k, QIndex q, const SeriesTruncation& trunc,
                 double f_at_x);

/// O(q-1) transform off the real axis, evaluated both as the direct
/// quadrature of the expanded integrand and as the derivative form
///   G(k) + (q-1) [ (k^2/2) G''(k) + k d/dk d/dbeta G(k,beta)|_{beta=1} ]
/// with the central differences folded into single integrands so the two
/// routes can be compared at quadrature accuracy. ConsistencyWarning when
/// they disagree by more than 100*tol.
FirstOrderResult qft_first_order(const QFTInput& in, Complex k, double tol = 1e-9);

/// Closed Struve-Neumann form of the one-sided classical transform of the
/// q-Gaussian raised to the power beta:
///   C^beta c^(-s beta) (sqrt(pi)/2) Gamma(1 - s beta)
///     * (2/(sqrt(c) p))^nu * [H_nu - Y_nu](p / sqrt(c)),
/// with c = (q'-1) alpha, s = 1/(q'-1), nu = 1/2 - s beta, p = -ik on the
/// upper half-plane (and the mirrored piece with p = ik below). At the
/// removable points 1 - s beta in {0,-1,-2,...} the Gamma pole meets a
/// vanishing brace; a symmetric ladder in q' supplies the limit. Real k
/// returns the boundary jump via a shrinking-offset ladder.
TransformResult gaussian_G_closed(const QGaussianParams& p, Complex k,
                                  double beta);

} // namespace qftkit
