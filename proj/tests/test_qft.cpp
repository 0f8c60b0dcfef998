#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "doctest.h"
#include "qftkit/qft.hpp"
#include "test_util.hpp"

using qftkit::Complex;
using qftkit::ContourSpec;
using qftkit::DecayClass;
using qftkit::DensityFunction;
using qftkit::QFTInput;
using qftkit::QIndex;
using qftkit::SectionallyAnalytic;
using testutil::check_close;
using testutil::check_rel;

namespace {

DensityFunction classical_gaussian(double alpha) {
    qftkit::QGaussianParams p(QIndex(1.0), alpha);
    return {[p](double x) { return qftkit::q_gaussian_pdf(x, p); },
            -qftkit::kInf,
            qftkit::kInf,
            DecayClass::exponential,
            0.0,
            "gaussian"};
}

DensityFunction deformed_gaussian(double qprime, double alpha) {
    qftkit::QGaussianParams p(QIndex(qprime), alpha);
    return {[p](double x) { return qftkit::q_gaussian_pdf(x, p); },
            -qftkit::kInf,
            qftkit::kInf,
            DecayClass::algebraic,
            2.0 / (qprime - 1.0),
            "q-gaussian"};
}

DensityFunction unit_box() {
    return {[](double x) { return std::abs(x) <= 1.0 ? 1.0 : 0.0; },
            -1.0,
            1.0,
            DecayClass::compact,
            0.0,
            "box"};
}

// The transform integrand written out from scratch so the full-line real-axis
// quadrature below is independent of the production half-plane splitting.
Complex plain_integrand(const DensityFunction& f, QIndex q, double k, double x) {
    double fx = f.eval(x);
    if (fx == 0.0) return {0.0, 0.0};
    Complex z = Complex(0.0, 1.0) * k * x * std::pow(fx, q.qm1());
    return fx * qftkit::q_exponential_c(z, q);
}

Complex direct_real_axis(const DensityFunction& f, QIndex q, double k) {
    auto g = [&](double x) { return plain_integrand(f, q, k, x); };
    auto right = qftkit::integrate_halfline(g, qftkit::HalfLine::positive, f.decay,
                                            1e-11, f.support_hi);
    auto left = qftkit::integrate_halfline(g, qftkit::HalfLine::negative, f.decay,
                                           1e-11, -f.support_lo);
    return right.value + left.value;
}

} // namespace

TEST_CASE("membership screen on the documented corner cases") {
    auto qg = deformed_gaussian(1.5, 1.0);
    auto m1 = qftkit::check_lambda_membership(qg, QIndex(1.5), 1.0);
    CHECK(m1.member);
    CHECK(m1.exponent_right < -3.0);

    DensityFunction unit{[](double) { return 1.0; },
                         -qftkit::kInf,
                         qftkit::kInf,
                         DecayClass::algebraic,
                         0.0,
                         "unit"};
    // the deformation supplies the decay a constant density lacks: |g| ~ x^-2
    auto m2 = qftkit::check_lambda_membership(unit, QIndex(1.5), 1.0);
    CHECK(m2.member);
    CHECK(m2.exponent_right == doctest::Approx(-2.0).epsilon(0.05));
    CHECK(m2.exponent_left == doctest::Approx(-2.0).epsilon(0.05));

    // at q = 1 the same density rides a pure phase: no decay at all
    auto m3 = qftkit::check_lambda_membership(unit, QIndex(1.0), 1.0);
    CHECK_FALSE(m3.member);
    CHECK(std::abs(m3.exponent_right) < 0.05);

    // compact support passes trivially
    auto m4 = qftkit::check_lambda_membership(unit_box(), QIndex(1.2), 2.0);
    CHECK(m4.member);
    CHECK(m4.exponent_right == -qftkit::kInf);
}

TEST_CASE("one-sided transform off the axis") {
    QFTInput gauss{classical_gaussian(1.0), QIndex(1.0)};

    // elementary at q = 1, k = i: integral of f(x) e^{-x} over [0, inf)
    double want = 0.5 * std::exp(0.25) * std::erfc(0.5);
    auto r = qftkit::qft_complex(gauss, Complex(0.0, 1.0));
    check_close(r.value, Complex(want, 0.0), 1e-10);

    // each half-plane evaluation tends to half the mass as k -> 0
    QFTInput qg{deformed_gaussian(1.5, 1.0), QIndex(1.5)};
    auto up = qftkit::qft_complex(qg, Complex(0.0, 1e-3));
    CHECK(std::abs(up.value - 0.5) < 1e-3);
    auto dn = qftkit::qft_complex(qg, Complex(0.0, -1e-3));
    CHECK(std::abs(dn.value + 0.5) < 1e-3);

    DensityFunction zero{[](double) { return 0.0; },
                         -qftkit::kInf,
                         qftkit::kInf,
                         DecayClass::exponential,
                         0.0,
                         "zero"};
    auto z = qftkit::qft_complex({zero, QIndex(1.4)}, Complex(2.0, 1.0));
    CHECK(std::abs(z.value) == 0.0);

    CHECK_THROWS_AS(qftkit::qft_complex(qg, Complex(1.0, 0.0)), qftkit::DomainError);
}

TEST_CASE("real-axis cut: normalization and the classical transform") {
    QFTInput qg{deformed_gaussian(1.5, 1.0), QIndex(1.5)};
    auto r0 = qftkit::qft_real_cut(qg, 0.0);
    check_close(r0.value, Complex(1.0, 0.0), 1e-9);

    QFTInput gauss{classical_gaussian(1.0), QIndex(1.0)};
    for (double k : {0.7, 1.5}) {
        auto r = qftkit::qft_real_cut(gauss, k);
        check_close(r.value, Complex(std::exp(-k * k / 4.0), 0.0), 1e-8);
    }
}

TEST_CASE("cut agrees with the absolutely convergent full-line integral") {
    auto f = deformed_gaussian(1.5, 1.0);
    for (double qv : {1.1, 1.5, 1.9}) {
        for (double k : {0.5, -1.0, 2.0}) {
            QIndex q(qv);
            Complex want = direct_real_axis(f, q, k);
            auto got = qftkit::qft_real_cut({f, q}, k);
            CAPTURE(qv);
            CAPTURE(k);
            check_close(got.value, want, 1e-6);
        }
    }
}

TEST_CASE("contour inversion of the classical transform") {
    QFTInput gauss{classical_gaussian(1.0), QIndex(1.0)};
    // the family is constant in q here, so a short ladder is enough and the
    // contour tolerance only needs to sit below the 1e-5 target
    auto family = [&](double) { return qftkit::make_sectional(gauss, 1e-9); };
    std::vector<double> ladder = {1e-2, 5e-3};
    ContourSpec spec{1.0, 0.0, 1e-6, false, 0.0};
    auto r1 = qftkit::qft_inverse(family, 1.0, ladder, spec);
    check_close(r1.value, Complex(std::exp(-1.0) / std::sqrt(M_PI), 0.0), 1e-5);
    auto r0 = qftkit::qft_inverse(family, 0.0, ladder, spec);
    check_close(r0.value, Complex(1.0 / std::sqrt(M_PI), 0.0), 1e-5);

    SectionallyAnalytic null{[](Complex) { return Complex(0.0, 0.0); },
                             [](Complex) { return Complex(0.0, 0.0); },
                             0};
    auto rz = qftkit::qft_inverse([&](double) { return null; }, 0.3);
    CHECK(std::abs(rz.value) < 1e-12);
}

TEST_CASE("round trip through the classical limit recovers the density") {
    auto f = deformed_gaussian(1.3, 1.0);
    auto family = [&](double qv) {
        return qftkit::make_sectional({f, QIndex(qv)}, 1e-10);
    };
    std::vector<double> xs = {0.0, 0.7};
    auto got = qftkit::qft_inverse_grid(family, xs);
    for (size_t i = 0; i < xs.size(); ++i) {
        double want = f.eval(xs[i]);
        CAPTURE(xs[i]);
        CHECK(std::abs(got[i].value - want) < 5e-3);
    }
}

TEST_CASE("Cauchy-kernel density representation") {
    auto box = unit_box();
    auto r = qftkit::dirac_density_rep(box, Complex(0.0, 2.0));
    Complex want = (std::log(Complex(1.0, -2.0)) - std::log(Complex(-1.0, -2.0))) /
                   (Complex(0.0, 2.0) * M_PI);
    check_close(r.value, want, 1e-9);

    // boundary jump recovers the density at an interior continuity point
    std::vector<double> ladder = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
    std::vector<Complex> jumps;
    for (double d : ladder) {
        auto up = qftkit::dirac_density_rep(box, Complex(0.0, d));
        auto dn = qftkit::dirac_density_rep(box, Complex(0.0, -d));
        jumps.push_back(up.value - dn.value);
    }
    auto e = qftkit::richardson_zero(ladder, jumps);
    check_close(e.value, Complex(1.0, 0.0), 1e-7);

    DensityFunction zero{[](double) { return 0.0; },
                         -qftkit::kInf,
                         qftkit::kInf,
                         DecayClass::exponential,
                         0.0,
                         "zero"};
    auto rz = qftkit::dirac_density_rep(zero, Complex(0.0, 1.0));
    CHECK(std::abs(rz.value) == 0.0);

    CHECK_THROWS_AS(qftkit::dirac_density_rep(box, Complex(0.5, 0.0)),
                    qftkit::DomainError);
}

TEST_CASE("growth fit on the inversion contour") {
    SectionallyAnalytic decaying{[](Complex k) { return 1.0 / k; },
                                 [](Complex k) { return 1.0 / k; },
                                 0};
    ContourSpec spec{1.0, 40.0, 1e-8, false, 0.0};
    auto g1 = qftkit::growth_check(decaying, spec);
    CHECK(g1.degree == 0);
    CHECK(g1.slope == doctest::Approx(-1.0).epsilon(0.02));

    SectionallyAnalytic quadratic{[](Complex k) { return k * k + 1.0; },
                                  [](Complex k) { return k * k + 1.0; },
                                  0};
    auto g2 = qftkit::growth_check(quadratic, spec);
    CHECK(g2.degree == 2);
    CHECK(g2.slope == doctest::Approx(2.0).epsilon(0.02));

    SectionallyAnalytic blowup{
        [](Complex k) { return Complex(std::exp(0.3 * std::abs(k)), 0.0); },
        [](Complex k) { return Complex(std::exp(0.3 * std::abs(k)), 0.0); },
        0};
    CHECK_THROWS_AS(qftkit::growth_check(blowup, spec), qftkit::FitError);
}

TEST_CASE("transform of a deformed gaussian is polynomially bounded") {
    QFTInput qg{deformed_gaussian(1.5, 1.0), QIndex(1.5)};
    auto F = qftkit::make_sectional(qg, 1e-10);
    ContourSpec spec{1.0, 50.0, 1e-8, false, 0.0};
    auto fit = qftkit::growth_check(F, spec);
    CHECK(fit.degree == 0);
    CHECK(fit.slope < 0.0); // the transform actually decays on the legs
}

TEST_CASE("contour independence of the sectional transform") {
    QFTInput qg{deformed_gaussian(1.5, 1.0), QIndex(1.3)};
    auto F = qftkit::make_sectional(qg, 1e-10);
    double x = 0.5;
    auto weight = [x](Complex k) {
        return std::exp(Complex(0.0, -1.0) * k * x) / (2.0 * M_PI);
    };
    ContourSpec near{0.8, 0.0, 1e-7, true, x};
    ContourSpec far{1.3, 0.0, 1e-7, true, x};
    auto a = qftkit::integrate_contour(F, weight, near);
    auto b = qftkit::integrate_contour(F, weight, far);
    CHECK(std::abs(a.value - b.value) < 5e-7);
}
