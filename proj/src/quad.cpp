#include "qftkit/quad.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace qftkit {

namespace {

// Gauss 7 / Kronrod 15 pair on [-1,1]; positive half of the symmetric nodes.
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Gauss weights for Kronrod node indices 1, 3, 5, 7.
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    Complex value;
    double err;
};

// Largest error first; ties resolved by position so refinement order is
// reproducible run to run.
struct PanelOrder {
    bool operator()(const Panel& p, const Panel& q) const {
        if (p.err != q.err)
            return p.err < q.err;
        return p.a > q.a;
    }
};

struct NeumaierSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double get() const { return s + c; }
};

Panel eval_panel(const std::function<Complex(double)>& g, double a, double b, long& n_evals) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Complex k15(0.0, 0.0), g7(0.0, 0.0);
    for (int i = 0; i < 7; ++i) {
        const double dx = kKronrodNodes[i] * half;
        const Complex f = g(mid - dx) + g(mid + dx);
        k15 += kKronrodWeights[i] * f;
        if (i % 2 == 1)
            g7 += kGaussWeights[i / 2] * f;
    }
    const Complex fc = g(mid);
    k15 += kKronrodWeights[7] * fc;
    g7 += kGaussWeights[3] * fc;
    n_evals += 15;

    k15 *= half;
    g7 *= half;
    if (!std::isfinite(k15.real()) || !std::isfinite(k15.imag())) {
        std::ostringstream os;
        os << "quad: integrand returned a non-finite value on [" << a << ", " << b << "]";
        throw DomainError(os.str());
    }
    return {a, b, k15, std::abs(k15 - g7)};
}

// Adaptive refinement: repeatedly split the panel with the largest error
// estimate until their sum meets tol. Panels whose error no longer matters
// (or that cannot be split further in double precision) are set aside.
TransformResult adaptive(const std::function<Complex(double)>& g,
                         double a, double b, double tol, int seed_panels) {
    if (!(tol > 0.0))
        throw ParameterError("quad: tolerance must be positive");
    if (!(b > a)) {
        if (a == b)
            return {Complex(0.0, 0.0), 0.0, 0};
        throw ParameterError("quad: interval endpoints out of order");
    }

    long n_evals = 0;
    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> active;
    std::vector<Panel> settled;
    double active_err = 0.0, settled_err = 0.0;

    seed_panels = std::clamp(seed_panels, 1, 60000);
    for (int j = 0; j < seed_panels; ++j) {
        const double pa = a + (b - a) * (double(j) / seed_panels);
        const double pb = (j + 1 == seed_panels) ? b : a + (b - a) * (double(j + 1) / seed_panels);
        Panel p = eval_panel(g, pa, pb, n_evals);
        active_err += p.err;
        active.push(p);
    }

    const double negligible = tol * 1e-4;
    while (active_err + settled_err > tol && !active.empty()) {
        if (n_evals + 30 > kEvalBudget) {
            // Assemble the best available value for the exception payload.
            NeumaierSum re, im;
            std::vector<Panel> all = settled;
            while (!active.empty()) {
                all.push_back(active.top());
                active.pop();
            }
            std::sort(all.begin(), all.end(), [](const Panel& p, const Panel& q) { return p.a < q.a; });
            for (const Panel& p : all) {
                re.add(p.value.real());
                im.add(p.value.imag());
            }
            throw ConvergenceError("quad: evaluation budget exhausted",
                                   Complex(re.get(), im.get()), active_err + settled_err);
        }
        Panel worst = active.top();
        active.pop();
        active_err -= worst.err;
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.err <= negligible / seed_panels || mid <= worst.a || mid >= worst.b) {
            settled.push_back(worst);
            settled_err += worst.err;
            continue;
        }
        Panel left = eval_panel(g, worst.a, mid, n_evals);
        Panel right = eval_panel(g, mid, worst.b, n_evals);
        active_err += left.err + right.err;
        active.push(left);
        active.push(right);
    }

    std::vector<Panel> all = settled;
    while (!active.empty()) {
        all.push_back(active.top());
        active.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& p, const Panel& q) { return p.a < q.a; });
    NeumaierSum re, im, err;
    for (const Panel& p : all) {
        re.add(p.value.real());
        im.add(p.value.imag());
        err.add(p.err);
    }
    return {Complex(re.get(), im.get()), err.get(), n_evals};
}

constexpr double kEulerGamma = 0.577215664901532860606512090082;

// Exponential integral E1 on the principal branch (off the cut (-inf, 0]).
// Power series for moderate |z|, optimally truncated asymptotic series beyond.
Complex e1_complex(Complex z) {
    if (z == Complex(0.0, 0.0))
        throw DomainError("e1_complex: argument must be nonzero");
    if (std::abs(z) <= 15.0) {
        Complex sum(0.0, 0.0), term(1.0, 0.0);
        for (int n = 1; n <= 400; ++n) {
            term *= -z / double(n);
            const Complex contrib = term / double(n);
            sum += contrib;
            if (std::abs(contrib) <= 1e-18 * (1.0 + std::abs(sum)))
                break;
        }
        return -kEulerGamma - std::log(z) - sum;
    }
    Complex s(1.0, 0.0), term(1.0, 0.0);
    for (int j = 1; j <= 80; ++j) {
        const Complex next = term * (-double(j)) / z;
        if (std::abs(next) >= std::abs(term))
            break; // asymptotic series started diverging
        term = next;
        s += term;
        if (std::abs(term) <= 1e-18 * std::abs(s))
            break;
    }
    return std::exp(-z) / z * s;
}

// J1(x,c,T) = int_T^inf exp(-i x s)/(s + c) ds for real x != 0.
Complex tail_j1(double x, Complex c, double T) {
    const Complex i(0.0, 1.0);
    return std::exp(i * x * c) * e1_complex(i * x * (T + c));
}

// J2(x,c,T) = int_T^inf exp(-i x s)/(s + c)^2 ds, by parts from J1.
Complex tail_j2(double x, Complex c, double T) {
    const Complex i(0.0, 1.0);
    return std::exp(-i * x * T) / (T + c) - i * x * tail_j1(x, c, T);
}

struct LegFit {
    Complex A{0.0, 0.0}, B{0.0, 0.0};
    double rms = 0.0;
    bool usable = false;
};

// Least-squares fit of leg samples to A/k + B/k^2 over |Re k| in [0.68 T, T].
LegFit fit_leg_tail(const std::function<Complex(Complex)>& f, double h, double T, long& n_evals) {
    constexpr int m = 10;
    std::vector<Complex> ks, fs;
    for (int side = -1; side <= 1; side += 2)
        for (int j = 0; j < m; ++j) {
            const double s = side * T * (0.68 + 0.30 * j / (m - 1));
            const Complex k(s, h);
            ks.push_back(k);
            fs.push_back(f(k));
            ++n_evals;
        }
    Complex suu(0, 0), suv(0, 0), svv(0, 0), suf(0, 0), svf(0, 0);
    double fmax = 0.0;
    for (size_t j = 0; j < ks.size(); ++j) {
        const Complex u = 1.0 / ks[j];
        const Complex v = u * u;
        suu += std::conj(u) * u;
        suv += std::conj(u) * v;
        svv += std::conj(v) * v;
        suf += std::conj(u) * fs[j];
        svf += std::conj(v) * fs[j];
        fmax = std::max(fmax, std::abs(fs[j]));
    }
    const Complex det = suu * svv - suv * std::conj(suv);
    LegFit fit;
    if (std::abs(det) < 1e-60)
        return fit;
    fit.A = (suf * svv - svf * suv) / det;
    fit.B = (suu * svf - std::conj(suv) * suf) / det;
    double ss = 0.0;
    for (size_t j = 0; j < ks.size(); ++j) {
        const Complex u = 1.0 / ks[j];
        ss += std::norm(fit.A * u + fit.B * u * u - fs[j]);
    }
    fit.rms = std::sqrt(ss / ks.size());
    fit.usable = fit.rms <= 0.25 * fmax + 1e-300;
    return fit;
}

// Closed-form wings of one leg at height h against exp(-i k x), with the leg
// function modeled as A/k + B/k^2 beyond |Re k| = T.
Complex leg_tail_value(double x, double h, Complex A, Complex B, double T) {
    if (x == 0.0)
        return A * Complex(0.0, -2.0 * std::atan(h / T)) + B * (2.0 * T / (T * T + h * h));
    const Complex c(0.0, h);
    const double eh = std::exp(h * x);
    const Complex right = A * tail_j1(x, c, T) + B * tail_j2(x, c, T);
    const Complex left = -A * tail_j1(-x, -c, T) + B * tail_j2(-x, -c, T);
    return eh * (right + left);
}

int oscillation_seeds(double len, double osc_rate) {
    double cap = len / 8.0;
    if (osc_rate > 0.0)
        cap = std::min(cap, 2.5 / osc_rate);
    cap = std::max(cap, len / 60000.0);
    return (int)std::clamp(std::ceil(len / cap), 1.0, 60000.0);
}

} // namespace

TransformResult integrate_interval(const std::function<Complex(double)>& g,
                                   double a, double b, double tol) {
    return adaptive(g, a, b, tol, 8);
}

TransformResult integrate_halfline(const std::function<Complex(double)>& g,
                                   HalfLine side, DecayClass decay, double tol,
                                   double support_cut) {
    std::function<Complex(double)> gg;
    if (side == HalfLine::positive)
        gg = g;
    else
        gg = [&g](double t) { return g(-t); };

    if (std::isfinite(support_cut)) {
        if (support_cut <= 0.0)
            return {Complex(0.0, 0.0), 0.0, 0};
        return adaptive(gg, 0.0, support_cut, tol, 8);
    }

    std::function<Complex(double)> mapped;
    switch (decay) {
    case DecayClass::exponential:
        // t = -log(1-u) carries [0,1) onto [0,inf); the Jacobian 1/(1-u)
        // is absorbed by the exponential tail of the integrand.
        mapped = [&gg](double u) {
            const double om = 1.0 - u;
            return gg(-std::log(om)) / om;
        };
        break;
    case DecayClass::algebraic:
    case DecayClass::compact:
        // t = u/(1-u); compact supports without an explicit cut also land
        // here (the integrand just vanishes beyond the support image).
        mapped = [&gg](double u) {
            const double om = 1.0 - u;
            return gg(u / om) / (om * om);
        };
        break;
    }
    return adaptive(mapped, 0.0, 1.0, tol, 8);
}

TransformResult integrate_contour(const SectionallyAnalytic& F,
                                  const std::function<Complex(Complex)>& weight,
                                  const ContourSpec& spec) {
    if (!(spec.zeta > 0.0))
        throw ParameterError("integrate_contour: zeta must be positive");
    if (!(spec.tol > 0.0))
        throw ParameterError("integrate_contour: tol must be positive");
    const double t_min = 10.0 * std::max(1.0, 1.0 / spec.zeta);
    double T = spec.truncation == 0.0 ? t_min : spec.truncation;
    if (T < t_min)
        throw ParameterError("integrate_contour: truncation below the policy minimum");
    if (!F.upper || !F.lower)
        throw ParameterError("integrate_contour: both analytic pieces are required");

    const double zeta = spec.zeta;
    long pair_evals = 0; // evaluations of the two-leg pair (2 F calls each)
    auto leg_pair = [&](double s) -> Complex {
        const Complex ku(s, zeta), kl(s, -zeta);
        return F.upper(ku) * weight(ku) - F.lower(kl) * weight(kl);
    };

    const double osc = spec.fourier_weight ? std::abs(spec.fourier_x) : 0.0;
    long fit_evals = 0;

    TransformResult core = adaptive(leg_pair, -T, T, spec.tol * 0.25,
                                    oscillation_seeds(2.0 * T, osc));
    pair_evals += core.n_evals;
    Complex truncated = core.value;
    double quad_err = core.abs_err;

    Complex prev_completed(0.0, 0.0);
    bool have_prev = false;
    constexpr int kMaxDoublings = 30;
    for (int iter = 0;; ++iter) {
        Complex tails(0.0, 0.0);
        double tail_err = 0.0;
        if (spec.fourier_weight) {
            const LegFit up = fit_leg_tail(F.upper, zeta, T, fit_evals);
            const LegFit lo = fit_leg_tail(F.lower, -zeta, T, fit_evals);
            if (up.usable && lo.usable) {
                // weight(k) = scale * exp(-i k x), so the prefactor is weight(0).
                const Complex scale = weight(Complex(0.0, 0.0));
                tails = scale * (leg_tail_value(spec.fourier_x, zeta, up.A, up.B, T) -
                                 leg_tail_value(spec.fourier_x, -zeta, lo.A, lo.B, T));
                tail_err = 0.5 * T * (up.rms + lo.rms) * std::abs(scale) *
                           std::exp(zeta * std::abs(spec.fourier_x));
            } else {
                tail_err = kInf; // fall back to plain doubling for this stage
            }
        }
        const Complex completed = truncated + (std::isfinite(tail_err) ? tails : Complex(0.0, 0.0));
        if (have_prev) {
            const double step_change = std::abs(completed - prev_completed);
            if (step_change < spec.tol * 0.1) {
                double total_err = quad_err + step_change;
                if (std::isfinite(tail_err))
                    total_err += tail_err;
                else
                    total_err += step_change;
                return {completed, total_err, 2 * pair_evals + fit_evals};
            }
        }
        prev_completed = completed;
        have_prev = true;
        if (iter >= kMaxDoublings)
            throw TruncationError("integrate_contour: truncation did not stabilize under doubling");

        const int wing_seeds = oscillation_seeds(T, osc);
        TransformResult wing_r = adaptive(leg_pair, T, 2.0 * T, spec.tol * 0.125, wing_seeds);
        TransformResult wing_l = adaptive(leg_pair, -2.0 * T, -T, spec.tol * 0.125, wing_seeds);
        pair_evals += wing_r.n_evals + wing_l.n_evals;
        truncated += wing_r.value + wing_l.value;
        quad_err += wing_r.abs_err + wing_l.abs_err;
        T *= 2.0;
    }
}

Extrapolated richardson_zero(const std::vector<double>& h, const std::vector<Complex>& v) {
    const size_t n = h.size();
    if (n != v.size() || n < 2)
        throw ParameterError("richardson_zero: need matching ladders with at least two rungs");
    for (size_t j = 0; j < n; ++j) {
        if (!(h[j] > 0.0) || (j > 0 && !(h[j] < h[j - 1])))
            throw ParameterError("richardson_zero: ladder must be positive and strictly decreasing");
    }
    std::vector<Complex> t = v;
    Complex diag = t[0];
    double last_step = kInf;
    for (size_t j = 1; j < n; ++j) {
        for (size_t i = n - 1; i >= j; --i) {
            t[i] = (-h[i - j] * t[i] + h[i] * t[i - 1]) / (h[i] - h[i - j]);
            if (i == j)
                break;
        }
        last_step = std::abs(t[n - 1] - diag);
        diag = t[n - 1];
    }
    return {diag, last_step};
}

} // namespace qftkit
