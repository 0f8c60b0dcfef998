#include "qftkit/qft.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <utility>

namespace qftkit {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Integrand of the one-sided transform, f(x) e_q(i k x f(x)^(q-1)).
// Zero density short-circuits so the tail power f^(q-1) never sees 0^0.
Complex uts_integrand(const DensityFunction& f, QIndex q, Complex k, double x) {
    double fx = f.eval(x);
    if (fx == 0.0) return {0.0, 0.0};
    if (fx < 0.0) throw DomainError("density must be nonnegative");
    Complex z = Complex(0.0, 1.0) * k * (x * std::pow(fx, q.qm1()));
    return fx * q_exponential_c(z, q);
}

// Least-squares slope of y against t.
double lsq_slope(const std::vector<double>& t, const std::vector<double>& y) {
    size_t n = t.size();
    double tm = 0.0, ym = 0.0;
    for (size_t i = 0; i < n; ++i) {
        tm += t[i];
        ym += y[i];
    }
    tm /= static_cast<double>(n);
    ym /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < n; ++i) {
        num += (t[i] - tm) * (y[i] - ym);
        den += (t[i] - tm) * (t[i] - tm);
    }
    return num / den;
}

// Fitted tail exponent of the transform integrand on one side; -inf means the
// tail is compact or numerically zero over the whole sample range.
double tail_exponent(const DensityFunction& f, QIndex q, Complex k, bool right) {
    double edge = right ? f.support_hi : -f.support_lo;
    if (std::isfinite(edge)) return -kInf;

    std::vector<double> lx, lg;
    double x = 2.0;
    for (int j = 0; j < 23; ++j, x *= 1.45) {
        double mag;
        try {
            mag = std::abs(uts_integrand(f, q, k, right ? x : -x));
        } catch (const BranchPointError&) {
            mag = 1e300; // a pole on the sampling ray certainly breaks L^1
        }
        if (mag > 1e-300) {
            lx.push_back(std::log(x));
            lg.push_back(std::log(mag));
        }
    }
    if (lx.size() < 3) return -kInf;

    // Fit the outermost points only; the near field is not tail behaviour.
    size_t keep = std::min<size_t>(12, lx.size());
    std::vector<double> t(lx.end() - keep, lx.end());
    std::vector<double> y(lg.end() - keep, lg.end());
    return lsq_slope(t, y);
}

SectionallyAnalytic with_cache(const SectionallyAnalytic& F) {
    using Store = std::map<std::pair<double, double>, Complex>;
    auto wrap = [](const std::function<Complex(Complex)>& fn) {
        auto store = std::make_shared<Store>();
        return [fn, store](Complex k) {
            auto key = std::make_pair(k.real(), k.imag());
            auto it = store->find(key);
            if (it != store->end()) return it->second;
            Complex v = fn(k);
            store->emplace(key, v);
            return v;
        };
    };
    return {wrap(F.upper), wrap(F.lower), F.growth_degree};
}

} // namespace

LambdaCheck check_lambda_membership(const DensityFunction& f, QIndex q, Complex k) {
    LambdaCheck out;
    out.exponent_right = tail_exponent(f, q, k, true);
    out.exponent_left = tail_exponent(f, q, k, false);
    // Slopes at -1 sit exactly on the integrability edge; demand a margin.
    out.member = out.exponent_right < -1.02 && out.exponent_left < -1.02;
    return out;
}

TransformResult qft_complex(const QFTInput& in, Complex k, double tol) {
    if (k.imag() == 0.0)
        throw DomainError("transform is two-sided on the real axis; use qft_real_cut");

    const DensityFunction& f = in.f;
    auto g = [&](double x) { return uts_integrand(f, in.q, k, x); };
    if (k.imag() > 0.0) {
        return integrate_halfline(g, HalfLine::positive, f.decay, tol, f.support_hi);
    }
    TransformResult r =
        integrate_halfline(g, HalfLine::negative, f.decay, tol, -f.support_lo);
    r.value = -r.value;
    return r;
}

TransformResult qft_real_cut(const QFTInput& in, double k, double tol) {
    const std::vector<double> ladder = {1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4};
    std::vector<Complex> vals;
    vals.reserve(ladder.size());
    double quad_err = 0.0;
    long evals = 0;
    for (double d : ladder) {
        TransformResult up = qft_complex(in, Complex(k, d), tol);
        TransformResult dn = qft_complex(in, Complex(k, -d), tol);
        vals.push_back(up.value - dn.value);
        quad_err += up.abs_err + dn.abs_err;
        evals += up.n_evals + dn.n_evals;
    }
    Extrapolated e = richardson_zero(ladder, vals);
    double scale = std::max(1.0, std::abs(e.value));
    if (!std::isfinite(std::abs(e.value)) || e.abs_err > 1e-5 * scale)
        throw ExtrapolationError("boundary-offset ladder did not converge");
    return {e.value, e.abs_err + quad_err, evals};
}

SectionallyAnalytic make_sectional(const QFTInput& in, double tol) {
    SectionallyAnalytic F;
    F.upper = [in, tol](Complex k) { return qft_complex(in, k, tol).value; };
    F.lower = [in, tol](Complex k) { return qft_complex(in, k, tol).value; };
    return F;
}

std::vector<TransformResult> qft_inverse_grid(const SectionalFamily& family,
                                              const std::vector<double>& xs,
                                              const std::vector<double>& eps_ladder,
                                              ContourSpec base) {
    std::vector<std::vector<Complex>> vals(xs.size());
    std::vector<double> quad_err(xs.size(), 0.0);
    std::vector<long> evals(xs.size(), 0);

    for (double eps : eps_ladder) {
        SectionallyAnalytic F = with_cache(family(1.0 + eps));
        for (size_t i = 0; i < xs.size(); ++i) {
            double x = xs[i];
            ContourSpec spec = base;
            spec.fourier_weight = true;
            spec.fourier_x = x;
            auto weight = [x](Complex k) {
                return std::exp(Complex(0.0, -1.0) * k * x) / kTwoPi;
            };
            TransformResult r = integrate_contour(F, weight, spec);
            vals[i].push_back(r.value);
            quad_err[i] += r.abs_err;
            evals[i] += r.n_evals;
        }
    }

    std::vector<TransformResult> out(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        Extrapolated e = richardson_zero(eps_ladder, vals[i]);
        double scale = std::max(1.0, std::abs(e.value));
        if (!std::isfinite(std::abs(e.value)) || e.abs_err > 0.02 * scale)
            throw ExtrapolationError("classical-limit ladder did not converge");
        out[i] = {e.value, e.abs_err + quad_err[i], evals[i]};
    }
    return out;
}

TransformResult qft_inverse(const SectionalFamily& family, double x,
                            const std::vector<double>& eps_ladder,
                            ContourSpec base) {
    return qft_inverse_grid(family, {x}, eps_ladder, base)[0];
}

TransformResult dirac_density_rep(const DensityFunction& f, Complex z, double tol) {
    if (z.imag() == 0.0)
        throw DomainError("Cauchy representation needs z off the real axis");
    auto g = [&](double t) { return Complex(f.eval(t), 0.0) / (t - z); };
    TransformResult right =
        integrate_halfline(g, HalfLine::positive, f.decay, tol, f.support_hi);
    TransformResult left =
        integrate_halfline(g, HalfLine::negative, f.decay, tol, -f.support_lo);
    Complex coef(0.0, kTwoPi); // 2 pi i
    return {(right.value + left.value) / coef,
            (right.abs_err + left.abs_err) / kTwoPi,
            right.n_evals + left.n_evals};
}

GrowthFit growth_check(const SectionallyAnalytic& F, const ContourSpec& spec,
                       int max_degree) {
    double zeta = spec.zeta;
    double cap = spec.truncation > 0.0 ? spec.truncation
                                       : 10.0 * std::max(1.0, 1.0 / zeta);
    double lo = std::max(1.0, zeta);
    if (cap <= lo * 1.5)
        throw FitError("contour too short for a growth fit");

    std::vector<double> lk, lf;
    const int n_per = 24;
    double ratio = std::pow(cap / lo, 1.0 / (n_per - 1));
    double sigma = lo;
    for (int j = 0; j < n_per; ++j, sigma *= ratio) {
        for (double s : {sigma, -sigma}) {
            for (int half = 0; half < 2; ++half) {
                Complex k = half == 0 ? Complex(s, zeta) : Complex(s, -zeta);
                Complex v = half == 0 ? F.upper(k) : F.lower(k);
                double mag = std::abs(v);
                if (!std::isfinite(mag))
                    throw FitError("non-finite transform value on the contour");
                if (mag <= 0.0) continue;
                lk.push_back(std::log(std::abs(k)));
                lf.push_back(std::log(mag));
            }
        }
    }
    if (lk.size() < 8) throw FitError("too few usable samples for a growth fit");

    // Sort by |k| so the inner/outer split is meaningful.
    std::vector<size_t> idx(lk.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](size_t a, size_t b) { return lk[a] < lk[b]; });
    std::vector<double> sk(lk.size()), sf(lk.size());
    for (size_t i = 0; i < idx.size(); ++i) {
        sk[i] = lk[idx[i]];
        sf[i] = lf[idx[i]];
    }
    size_t half = sk.size() / 2;
    std::vector<double> ik(sk.begin(), sk.begin() + half),
        if_(sf.begin(), sf.begin() + half), ok(sk.begin() + half, sk.end()),
        of(sf.begin() + half, sf.end());
    double inner = lsq_slope(ik, if_);
    double outer = lsq_slope(ok, of);

    // Polynomial growth means the log-log slope settles; a slope still rising
    // by a whole power between the inner and outer halves does not.
    if (outer > max_degree + 0.5 || outer - inner > 1.0)
        throw FitError("transform grows faster than any fixed power on the sample");

    GrowthFit fit;
    fit.slope = outer;
    fit.degree = std::max(0, static_cast<int>(std::ceil(outer - 0.1)));
    fit.scale = 0.0;
    for (size_t i = 0; i < sk.size(); ++i)
        fit.scale = std::max(fit.scale, std::exp(sf[i] - fit.degree * sk[i]));
    return fit;
}

} // namespace qftkit
