#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "qftkit/quad.hpp"
#include "test_util.hpp"

using namespace qftkit;
using testutil::check_close;

namespace {
const Complex I(0.0, 1.0);
}

TEST_CASE("integrate_interval on smooth real integrands") {
    auto r = integrate_interval([](double x) { return Complex(x * x, 0.0); }, 0.0, 1.0, 1e-12);
    check_close(r.value, Complex(1.0 / 3.0, 0.0), 1e-13);
    CHECK(r.abs_err <= 1e-12);
    CHECK(r.n_evals > 0);

    r = integrate_interval([](double x) { return Complex(std::sin(x), 0.0); }, 0.0, M_PI, 1e-12);
    check_close(r.value, Complex(2.0, 0.0), 1e-12);
}

TEST_CASE("integrate_interval on an oscillatory integrand") {
    auto r = integrate_interval([](double x) { return Complex(std::cos(40.0 * x), 0.0); },
                                0.0, 1.0, 1e-12);
    check_close(r.value, Complex(std::sin(40.0) / 40.0, 0.0), 1e-11);
}

TEST_CASE("integrate_interval complex values") {
    auto r = integrate_interval([](double x) { return std::exp(I * x); }, 0.0, 1.0, 1e-12);
    check_close(r.value, (std::exp(I) - 1.0) / I, 1e-12);
}

TEST_CASE("integrate_interval is deterministic") {
    auto f = [](double x) { return Complex(std::exp(-x) * std::cos(7.0 * x), std::sin(3.0 * x)); };
    auto r1 = integrate_interval(f, 0.0, 5.0, 1e-11);
    auto r2 = integrate_interval(f, 0.0, 5.0, 1e-11);
    CHECK(r1.value.real() == r2.value.real());
    CHECK(r1.value.imag() == r2.value.imag());
    CHECK(r1.n_evals == r2.n_evals);
}

TEST_CASE("integrate_interval budget exhaustion carries a partial value") {
    // Far more oscillations than the evaluation budget can resolve.
    auto nasty = [](double x) { return Complex(std::cos(3e6 * x), 0.0); };
    try {
        integrate_interval(nasty, 0.0, 1.0, 1e-13);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(std::abs(e.partial_value) < 1.5);
        CHECK(e.error_estimate > 0.0);
    }
}

TEST_CASE("integrate_halfline exponential decay") {
    auto r = integrate_halfline([](double x) { return Complex(std::exp(-x), 0.0); },
                                HalfLine::positive, DecayClass::exponential, 1e-12);
    check_close(r.value, Complex(1.0, 0.0), 1e-12);

    r = integrate_halfline([](double x) { return Complex(std::exp(-x * x), 0.0); },
                           HalfLine::positive, DecayClass::exponential, 1e-12);
    check_close(r.value, Complex(std::sqrt(M_PI) / 2.0, 0.0), 1e-12);

    // negative side of exp(x) over (-inf, 0]
    r = integrate_halfline([](double x) { return Complex(std::exp(x), 0.0); },
                           HalfLine::negative, DecayClass::exponential, 1e-12);
    check_close(r.value, Complex(1.0, 0.0), 1e-12);
}

TEST_CASE("integrate_halfline oscillatory exponential decay") {
    auto r = integrate_halfline([](double x) { return std::exp(-x) * std::exp(I * 5.0 * x); },
                                HalfLine::positive, DecayClass::exponential, 1e-12);
    check_close(r.value, 1.0 / Complex(1.0, -5.0), 1e-11);
}

TEST_CASE("integrate_halfline algebraic decay") {
    auto lorentz = [](double x) { return Complex(1.0 / (1.0 + x * x), 0.0); };
    auto r = integrate_halfline(lorentz, HalfLine::positive, DecayClass::algebraic, 1e-12);
    check_close(r.value, Complex(M_PI / 2.0, 0.0), 1e-11);

    r = integrate_halfline(lorentz, HalfLine::negative, DecayClass::algebraic, 1e-12);
    check_close(r.value, Complex(M_PI / 2.0, 0.0), 1e-11);

    auto r2 = integrate_halfline([](double x) { return Complex(std::pow(1.0 + x * x, -2.0), 0.0); },
                                 HalfLine::positive, DecayClass::algebraic, 1e-12);
    check_close(r2.value, Complex(M_PI / 4.0, 0.0), 1e-11);
}

TEST_CASE("integrate_halfline compact support cut") {
    auto box = [](double x) { return Complex(x < 0.5 ? 1.0 : 0.0, 0.0); };
    auto r = integrate_halfline(box, HalfLine::positive, DecayClass::compact, 1e-12, 0.5);
    check_close(r.value, Complex(0.5, 0.0), 1e-12);
    // support entirely on the other side
    r = integrate_halfline(box, HalfLine::positive, DecayClass::compact, 1e-12, -1.0);
    check_close(r.value, Complex(0.0, 0.0), 1e-15);
    CHECK(r.n_evals == 0);
}

TEST_CASE("richardson_zero recovers polynomial limits exactly") {
    std::vector<double> h = {0.1, 0.05, 0.025};
    std::vector<Complex> v;
    for (double hh : h)
        v.push_back(Complex(3.0 + 2.0 * hh + hh * hh, -1.0 + 0.5 * hh));
    auto e = richardson_zero(h, v);
    check_close(e.value, Complex(3.0, -1.0), 1e-13);
}

TEST_CASE("richardson_zero on a smooth non-polynomial ladder") {
    std::vector<double> h = {0.2, 0.1, 0.05, 0.025};
    std::vector<Complex> v;
    for (double hh : h)
        v.push_back(Complex(std::cos(hh), 0.0));
    // Generic polynomial extrapolation in h: residual ~ prod(h_j) * |f''''|/4!
    auto e = richardson_zero(h, v);
    check_close(e.value, Complex(1.0, 0.0), 5e-6);
    CHECK(e.abs_err < 1e-4);
}

TEST_CASE("richardson_zero rejects bad ladders") {
    CHECK_THROWS_AS(richardson_zero({0.1}, {Complex(1.0, 0.0)}), ParameterError);
    CHECK_THROWS_AS(richardson_zero({0.1, 0.2}, {Complex(1.0, 0.0), Complex(1.0, 0.0)}),
                    ParameterError);
}

TEST_CASE("integrate_contour picks up an enclosed simple pole") {
    // Both legs see 1/k; with the upper leg run left to right and the lower
    // leg right to left the winding about the origin is clockwise, so the
    // weighted integral of 1/(2 pi i k) is -1.
    SectionallyAnalytic F;
    F.upper = [](Complex k) { return 1.0 / k; };
    F.lower = [](Complex k) { return 1.0 / k; };
    auto w = [](Complex) { return 1.0 / (2.0 * M_PI * I); };

    ContourSpec spec;
    spec.zeta = 1.0;
    spec.tol = 1e-8;
    spec.fourier_weight = true; // weight is a constant: x = 0
    spec.fourier_x = 0.0;
    auto r = integrate_contour(F, w, spec);
    check_close(r.value, Complex(-1.0, 0.0), 1e-8);

    // Same thing without the analytic tail hint: plain doubling, looser tol.
    ContourSpec plain;
    plain.zeta = 1.0;
    plain.tol = 1e-5;
    auto r2 = integrate_contour(F, w, plain);
    check_close(r2.value, Complex(-1.0, 0.0), 1e-4);
}

TEST_CASE("integrate_contour of a double pole vanishes") {
    SectionallyAnalytic F;
    F.upper = [](Complex k) { return 1.0 / (k * k); };
    F.lower = [](Complex k) { return 1.0 / (k * k); };
    auto w = [](Complex) { return 1.0 / (2.0 * M_PI * I); };
    ContourSpec spec;
    spec.fourier_weight = true;
    spec.fourier_x = 0.0;
    auto r = integrate_contour(F, w, spec);
    check_close(r.value, Complex(0.0, 0.0), 1e-8);
}

TEST_CASE("integrate_contour of a function analytic in the strip vanishes") {
    SectionallyAnalytic F;
    F.upper = [](Complex k) { return 1.0 / (k + 2.0 * I); };
    F.lower = [](Complex k) { return 1.0 / (k + 2.0 * I); };
    auto w = [](Complex) { return Complex(1.0, 0.0); };
    ContourSpec spec;
    spec.zeta = 1.0;
    spec.tol = 1e-8;
    spec.fourier_weight = true;
    spec.fourier_x = 0.0;
    auto r = integrate_contour(F, w, spec);
    check_close(r.value, Complex(0.0, 0.0), 1e-7);
}

TEST_CASE("integrate_contour inverts the transform pair of exp(-|x|)/2") {
    // Half-line transforms of f(x) = exp(-|x|)/2: i/(2(k+i)) above,
    // i/(2(k-i)) below. The weighted contour should reproduce f.
    SectionallyAnalytic F;
    F.upper = [](Complex k) { return I / (2.0 * (k + I)); };
    F.lower = [](Complex k) { return I / (2.0 * (k - I)); };

    for (double x : {0.0, 0.7, -1.3, 2.0}) {
        auto w = [x](Complex k) { return std::exp(-I * k * x) / (2.0 * M_PI); };
        ContourSpec spec;
        spec.zeta = 0.5; // stay inside the pole-free strip
        spec.tol = 1e-8;
        spec.fourier_weight = true;
        spec.fourier_x = x;
        auto r = integrate_contour(F, w, spec);
        check_close(r.value, Complex(0.5 * std::exp(-std::abs(x)), 0.0), 2e-7);
    }
}

TEST_CASE("integrate_contour is insensitive to the leg height") {
    SectionallyAnalytic F;
    F.upper = [](Complex k) { return I / (2.0 * (k + I)); };
    F.lower = [](Complex k) { return I / (2.0 * (k - I)); };
    const double x = 0.9;
    auto w = [x](Complex k) { return std::exp(-I * k * x) / (2.0 * M_PI); };
    Complex got[3];
    int idx = 0;
    for (double zeta : {0.25, 0.5, 0.75}) {
        ContourSpec spec;
        spec.zeta = zeta;
        spec.tol = 1e-8;
        spec.fourier_weight = true;
        spec.fourier_x = x;
        got[idx++] = integrate_contour(F, w, spec).value;
    }
    CHECK(std::abs(got[0] - got[1]) < 1e-7);
    CHECK(std::abs(got[1] - got[2]) < 1e-7);
}

TEST_CASE("integrate_contour validates its spec") {
    SectionallyAnalytic F;
    F.upper = [](Complex k) { return 1.0 / k; };
    F.lower = [](Complex k) { return 1.0 / k; };
    auto w = [](Complex) { return Complex(1.0, 0.0); };
    ContourSpec bad;
    bad.zeta = -1.0;
    CHECK_THROWS_AS(integrate_contour(F, w, bad), ParameterError);
    ContourSpec small_T;
    small_T.truncation = 1.0; // below 10*max(1, 1/zeta)
    CHECK_THROWS_AS(integrate_contour(F, w, small_T), ParameterError);
}
