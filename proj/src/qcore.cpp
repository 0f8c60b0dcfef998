#include "qftkit/qcore.hpp"

#include <cmath>

namespace qftkit {

double q_exponential(double x, QIndex q) {
    if (q.is_classical())
        return std::exp(x);
    const double u = (1.0 - q.value()) * x;
    // Support edge: the deformed exponential is only defined while 1+(1-q)x > 0.
    if (1.0 + u <= 0.0)
        throw DomainError("q_exponential: argument at or beyond the support edge 1/(q-1)");
    // log1p keeps the q -> 1 crossover smooth when (1-q)x is tiny.
    return std::exp(std::log1p(u) / (1.0 - q.value()));
}

std::complex<double> q_exponential_c(std::complex<double> z, QIndex q) {
    if (q.is_classical())
        return std::exp(z);
    const std::complex<double> w = 1.0 + (1.0 - q.value()) * z;
    if (w == std::complex<double>(0.0, 0.0))
        throw BranchPointError("q_exponential_c: 1+(1-q)z vanishes");
    // Principal branch of w^(1/(1-q)).
    return std::exp(std::log(w) / (1.0 - q.value()));
}

double beta_real(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw DomainError("beta_real: arguments must be positive");
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double q_gaussian_norm(QIndex qprime, double alpha) {
    if (!(alpha > 0.0))
        throw DomainError("q_gaussian_norm: alpha must be positive");
    if (qprime.is_classical())
        return std::sqrt(alpha / M_PI);
    const double qm1 = qprime.qm1();
    return std::sqrt(qm1 * alpha) / beta_real(0.5, 1.0 / qm1 - 0.5);
}

double q_gaussian_pdf(double x, const QGaussianParams& p) {
    if (p.qprime.is_classical())
        return p.c_norm * std::exp(-p.alpha * x * x);
    const double qm1 = p.qprime.qm1();
    const double t = 1.0 + qm1 * p.alpha * x * x; // >= 1 for q' > 1
    return p.c_norm * std::exp(std::log(t) / (1.0 - p.qprime.value()));
}

} // namespace qftkit
