#pragma once

#include <complex>

#include "qftkit/errors.hpp"

namespace qftkit {

/// Entropic index restricted to the nonextensive range [1, 2).
/// Values within kClassicalEps of 1 are treated as exactly classical,
/// so downstream code can branch once instead of testing |q-1| everywhere.
class QIndex {
public:
    static constexpr double kClassicalEps = 1e-8;

    explicit QIndex(double q) : q_(q) {
        if (!(q >= 1.0 && q < 2.0))
            throw DomainError("q must lie in [1,2)");
    }

    double value() const { return q_; }
    double qm1() const { return q_ - 1.0; }
    bool is_classical() const { return q_ - 1.0 < kClassicalEps; }

private:
    double q_;
};

/// Deformed exponential (1 + (1-q)x)^(1/(1-q)); plain expated q = 1.
/// Throws DomainError at or beyond the support edge x = 1/(q-1).
double q_exponential(double x, QIndex q);

/// Principal-branch deformed exponential of a complex argument.
/// Throws BranchPointError where 1 + (1-q)z vanishes.
std::complex<double> q_exponential_c(std::complex<double> z, QIndex q);

/// Euler beta for positive real arguments.
double beta_real(double a, double b);

/// Normalization constant of the q-Gaussian with width parameter alpha,
/// sqrt((q'-1) alpha) / B(1/2, 1/(q'-1) - 1/2), reducing to sqrt(alpha/pi)
/// in the classical limit.
double q_gaussian_norm(QIndex qprime, double alpha);

struct QGaussianParams {
    QGaussianParams(QIndex qprime_, double alpha_)
        : qprime(qprime_), alpha(alpha_), c_norm(q_gaussian_norm(qprime_, alpha_)) {}

    QIndex qprime;
    double alpha;
    double c_norm;
};

/// Normalized q-Gaussian density C (1 + (q'-1) alpha x^2)^(1/(1-q')).
/// Positive on the whole line for q' in (1,2).
double q_gaussian_pdf(double x, const QGaussianParams& p);

} // namespace qftkit
