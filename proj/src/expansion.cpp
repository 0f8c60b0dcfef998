#include "qftkit/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qftkit {
namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr long kCompositionBudget = 100000;

double log_density(double f_at_x) {
    if (f_at_x <= 0.0)
        throw DomainError("series expansion needs a strictly positive density value");
    return std::log(f_at_x);
}

// Number of compositions of s into n ordered positive parts, C(s-1, n-1),
// saturating at the budget so the caller can bail out before enumerating.
long composition_count(int s, int n) {
    double c = 1.0;
    for (int j = 1; j <= n - 1; ++j) c *= static_cast<double>(s - j) / j;
    return c > 2e9 ? 2000000000L : static_cast<long>(c + 0.5);
}

// Sum of prod_j g[s_j] over ordered positive compositions s_1+..+s_n = s.
Complex composition_sum(const std::vector<Complex>& g, int s, int n) {
    if (n == 1) return g[s];
    Complex total{0.0, 0.0};
    // first part takes 1..s-(n-1); recurse on the remainder
    for (int first = 1; first <= s - (n - 1); ++first)
        total += g[first] * composition_sum(g, s - first, n - 1);
    return total;
}

} // namespace

Complex g_coeff(double x, Complex k, int n, double f_at_x) {
    if (n < 0) throw ParameterError("series order must be nonnegative");
    double lf = log_density(f_at_x);
    Complex w = Complex(0.0, 1.0) * k * x;
    Complex total = std::pow(w, n + 1) / static_cast<double>(n + 1); // m = 0
    double mfac = 1.0;
    Complex lpow{1.0, 0.0};
    for (int m = 1; m <= n; ++m) {
        mfac *= m;
        lpow *= lf;
        total += std::pow(static_cast<double>(n - m + 1), m - 1) / mfac *
                 std::pow(w, n - m + 1) * lpow;
    }
    return total;
}

Complex l_term(double x, Complex k, int n, QIndex q, double f_at_x, int cutoff_s) {
    if (n < 1) throw ParameterError("product order must be at least 1");
    if (cutoff_s < n) throw ParameterError("cutoff below the lowest contributing power");
    double t = q.qm1();
    if (t == 0.0) return {0.0, 0.0};

    long budget = 0;
    for (int s = n; s <= cutoff_s; ++s) {
        budget += composition_count(s, n);
        if (budget > kCompositionBudget)
            throw BudgetError("nested product sum exceeds the term budget");
    }

    std::vector<Complex> g(cutoff_s + 1);
    for (int s = 1; s <= cutoff_s; ++s) g[s] = g_coeff(x, k, s, f_at_x);

    Complex total{0.0, 0.0};
    double tp = std::pow(t, n);
    for (int s = n; s <= cutoff_s; ++s, tp *= t)
        total += composition_sum(g, s, n) * tp;
    double nfac = 1.0;
    for (int j = 2; j <= n; ++j) nfac *= j;
    return total / nfac;
}

Complex h_series(double x, Complex k, QIndex q, const SeriesTruncation& trunc,
                 double f_at_x) {
    if (trunc.order_n < 0) throw ParameterError("truncation order must be nonnegative");
    if (!(trunc.validity_radius > 0.0 && trunc.validity_radius < 1.0))
        throw ParameterError("validity radius must lie in (0,1)");
    double lf = log_density(f_at_x);
    double expansion_arg =
        q.qm1() * std::abs(k) * std::abs(x) * std::exp(q.qm1() * lf);
    if (expansion_arg >= trunc.validity_radius)
        throw ValidityError("expansion variable outside the convergence region");

    Complex phase = std::exp(Complex(0.0, 1.0) * k * x);
    if (q.qm1() == 0.0 || trunc.order_n == 0) return phase;
    Complex corr{1.0, 0.0};
    for (int n = 1; n <= trunc.order_n; ++n)
        corr += l_term(x, k, n, q, f_at_x, trunc.order_n);
    return phase * corr;
}

namespace {

// One-sided integral with the half-plane sign convention of the transform:
// [0,inf) above the axis, minus (-inf,0] below.
TransformResult half_plane_integral(const DensityFunction& f, Complex k,
                                    const std::function<Complex(double)>& g,
                                    double tol) {
    if (k.imag() > 0.0)
        return integrate_halfline(g, HalfLine::positive, f.decay, tol, f.support_hi);
    TransformResult r =
        integrate_halfline(g, HalfLine::negative, f.decay, tol, -f.support_lo);
    r.value = -r.value;
    return r;
}

} // namespace

FirstOrderResult qft_first_order(const QFTInput& in, Complex k, double tol) {
    if (k.imag() == 0.0)
        throw DomainError("first-order transform needs k off the real axis");
    const DensityFunction& f = in.f;
    double t = in.q.qm1();

    auto phase = [k](double x) { return std::exp(Complex(0.0, 1.0) * k * x); };

    auto direct_integrand = [&](double x) -> Complex {
        double fx = f.eval(x);
        if (fx == 0.0) return {0.0, 0.0};
        if (fx < 0.0) throw DomainError("density must be nonnegative");
        Complex w = Complex(0.0, 1.0) * k * x;
        return fx * phase(x) * (1.0 + t * (0.5 * w * w + w * std::log(fx)));
    };
    TransformResult direct = half_plane_integral(f, k, direct_integrand, tol);

    FirstOrderResult out;
    out.direct = direct;
    if (t == 0.0) {
        out.derivative_form = direct.value;
        out.consistency_gap = 0.0;
        return out;
    }

    // Central differences of the classical side, folded into the integrand:
    // [e^{i(k+h)x} + e^{i(k-h)x} - 2e^{ikx}]/h^2 = e^{ikx} (2cos(hx)-2)/h^2
    // and the mixed k/beta difference gives i sin(hx)/h * sinh(s ln f)/s.
    double h = 1e-4 * std::max(1.0, std::abs(k));
    double s = 1e-5;
    auto base_integrand = [&](double x) -> Complex {
        double fx = f.eval(x);
        if (fx < 0.0) throw DomainError("density must be nonnegative");
        return fx * phase(x);
    };
    auto dkk_integrand = [&](double x) -> Complex {
        double fx = f.eval(x);
        if (fx == 0.0) return {0.0, 0.0};
        return fx * phase(x) * ((2.0 * std::cos(h * x) - 2.0) / (h * h));
    };
    auto mixed_integrand = [&](double x) -> Complex {
        double fx = f.eval(x);
        if (fx <= 0.0) return {0.0, 0.0};
        return fx * phase(x) * (Complex(0.0, 1.0) * std::sin(h * x) / h) *
               (std::sinh(s * std::log(fx)) / s);
    };
    TransformResult base = half_plane_integral(f, k, base_integrand, tol);
    TransformResult dkk = half_plane_integral(f, k, dkk_integrand, tol);
    TransformResult mixed = half_plane_integral(f, k, mixed_integrand, tol);

    out.derivative_form =
        base.value + t * (0.5 * k * k * dkk.value + k * mixed.value);
    out.consistency_gap = std::abs(direct.value - out.derivative_form);
    out.direct.abs_err += base.abs_err + dkk.abs_err + mixed.abs_err;
    out.direct.n_evals += base.n_evals + dkk.n_evals + mixed.n_evals;
    if (out.consistency_gap > 100.0 * tol)
        throw ConsistencyWarning("expanded integrand and derivative form disagree");
    return out;
}

namespace {

// One half-plane piece of the closed transform; p = -ik above the axis,
// p = +ik below, so Re p > 0 either way.
Complex struve_neumann_half(double qp, double alpha, double beta, Complex p) {
    double c = (qp - 1.0) * alpha;
    double sb = beta / (qp - 1.0);
    double g = 1.0 - sb;
    double nu = g - 0.5;
    double rc = std::sqrt(c);
    Complex gam = gamma_c(Complex(g, 0.0)).value;
    Complex brace = struve_h(nu, p / rc).value - bessel_y(nu, p / rc).value;
    double norm = q_gaussian_norm(QIndex(qp), alpha);
    return std::pow(norm, beta) * std::pow(c, -sb) * (kSqrtPi / 2.0) * gam *
           std::pow(2.0 / (rc * p), nu) * brace;
}

Complex closed_plain(double qp, double alpha, double beta, Complex k) {
    Complex p = k.imag() > 0.0 ? Complex(0.0, -1.0) * k : Complex(0.0, 1.0) * k;
    Complex v = struve_neumann_half(qp, alpha, beta, p);
    return k.imag() > 0.0 ? v : -v;
}

bool degenerate_order(double qp, double beta, double margin) {
    double g = 1.0 - beta / (qp - 1.0);
    return std::abs(g - std::round(g)) < margin && std::round(g) < 0.5;
}

// At the removable 0*inf points the value is recovered as the q' -> qp limit:
// symmetric averages kill the odd terms, two rungs kill the eps^2 one.
Complex closed_value(double qp, double alpha, double beta, Complex k) {
    if (!degenerate_order(qp, beta, 1e-4)) return closed_plain(qp, alpha, beta, k);
    double e1 = 1e-2;
    while (degenerate_order(qp + e1, beta, 1e-3) ||
           degenerate_order(qp - e1, beta, 1e-3) || qp + e1 >= 2.0 || qp - e1 <= 1.0)
        e1 *= 0.5;
    double e2 = e1 * 0.5;
    while (degenerate_order(qp + e2, beta, 1e-3) ||
           degenerate_order(qp - e2, beta, 1e-3))
        e2 *= 0.5;
    auto sym = [&](double e) {
        return 0.5 * (closed_plain(qp + e, alpha, beta, k) +
                      closed_plain(qp - e, alpha, beta, k));
    };
    Complex m1 = sym(e1), m2 = sym(e2);
    return (e1 * e1 * m2 - e2 * e2 * m1) / (e1 * e1 - e2 * e2);
}

} // namespace

TransformResult gaussian_G_closed(const QGaussianParams& p, Complex k, double beta) {
    if (beta < 1.0) throw ParameterError("power parameter must be at least 1");
    double qp = p.qprime.value();
    if (qp - 1.0 < QIndex::kClassicalEps)
        throw DomainError("closed form needs a genuinely deformed gaussian");

    if (k.imag() != 0.0) {
        Complex v = closed_value(qp, p.alpha, beta, k);
        double est = (degenerate_order(qp, beta, 1e-4) ? 1e-7 : 1e-12) *
                     std::max(1.0, std::abs(v));
        return {v, est, 0};
    }

    // boundary jump across the axis from a shrinking-offset ladder
    double scale = std::max(1.0, std::abs(k));
    std::vector<double> ladder = {1e-2 * scale, 5e-3 * scale, 2.5e-3 * scale};
    std::vector<Complex> vals;
    for (double d : ladder)
        vals.push_back(closed_value(qp, p.alpha, beta, Complex(k.real(), d)) -
                       closed_value(qp, p.alpha, beta, Complex(k.real(), -d)));
    Extrapolated e = richardson_zero(ladder, vals);
    if (!std::isfinite(std::abs(e.value)) ||
        e.abs_err > 1e-6 * std::max(1.0, std::abs(e.value)))
        throw AccuracyError("boundary-offset ladder for the closed form did not settle");
    return {e.value, e.abs_err, 0};
}

} // namespace qftkit
