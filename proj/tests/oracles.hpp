#pragma once
// Reference values computed independently of the library code paths.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

// FBDF-1 weight: e^{-n sigma tau} Gamma(n - alpha) / (Gamma(-alpha) Gamma(n + 1)).
inline double fbdf1_weight(double alpha, double sigma, double tau, long n) {
    const long double a = alpha;
    const long double lg = std::lgamma(static_cast<long double>(n) - a) - std::lgamma(static_cast<long double>(n) + 1.0L);
    return static_cast<double>(std::exp(lg - static_cast<long double>(n) * sigma * tau) / std::tgamma(-a));
}

// Binomial series of (1 - c z)^a in long double.
inline std::vector<long double> binomial_series(long double a, long double c, std::size_t n) {
    std::vector<long double> r(n + 1);
    r[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) r[k] = r[k - 1] * (static_cast<long double>(k) - 1 - a) / k * c;
    return r;
}

// ((3/2)(1 - z)(1 - z/3))^alpha: product of two binomial series.
inline std::vector<double> fbdf2_series(double alpha, std::size_t n) {
    const auto A = binomial_series(alpha, 1.0L, n), B = binomial_series(alpha, 1.0L / 3, n);
    const long double s = std::pow(1.5L, static_cast<long double>(alpha));
    std::vector<double> c(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        long double acc = 0;
        for (std::size_t j = 0; j <= k; ++j) acc += A[j] * B[k - j];
        c[k] = static_cast<double>(s * acc);
    }
    return c;
}

// E_{1/2}(-x) = e^{x^2} erfc(x).
inline double ml_half(double x) {
    const long double X = x;
    return static_cast<double>(std::exp(X * X) * std::erfc(X));
}

// e^{-sigma t} D^alpha [e^{sigma s} s^gamma](t), 0 < alpha < 1, gamma > 0, as
// the Caputo integral (1/Gamma(1-alpha)) int_0^t (t-s)^-alpha g'(s) ds.
inline double tempered_power_derivative(double alpha, double sigma, double gamma, double t) {
    boost::math::quadrature::tanh_sinh<double> q;
    // xc is b - s above the midpoint and a - s (negative) below it
    auto dg = [&](double s, double xc) {
        const double tc = xc > 0 ? xc : t - s;
        const double g1 = std::exp(sigma * s) * (sigma * std::pow(s, gamma) + gamma * std::pow(s, gamma - 1));
        return std::pow(tc, -alpha) * g1;
    };
    const double v = q.integrate(dg, 0.0, t);
    return std::exp(-sigma * t) * v / std::tgamma(1 - alpha);
}

// phi_n for GNGF-2: F(-e^x) = 1 - (alpha/2) tau e^x.
inline double phi_n_gngf2(double x, long n, double alpha, double tau) {
    const double ex = std::exp(x);
    return -std::sin(alpha * std::numbers::pi) / std::numbers::pi * std::exp((1 + alpha) * x) *
           (1 - 0.5 * alpha * tau * ex) * std::pow(1 + tau * ex, -1.0 - static_cast<double>(n));
}

// Direct convolution tau^-alpha sum_{k<=n} w_{n-k} u_k in long double.
inline std::vector<double> direct_convolution(const std::vector<double>& w, const std::vector<double>& u, double tau,
                                              double alpha) {
    const long double s = std::pow(static_cast<long double>(tau), static_cast<long double>(-alpha));
    std::vector<double> r(u.size());
    for (std::size_t n = 0; n < u.size(); ++n) {
        long double acc = 0;
        for (std::size_t k = 0; k <= n; ++k) acc += static_cast<long double>(w[n - k]) * u[k];
        r[n] = static_cast<double>(s * acc);
    }
    return r;
}

// Largest growth rate Re s of the linearized system
//   s U = kappa J U - mu s^{1-alpha} diag(1, d) U,  mu = Laplacian eigenvalue,
// found by Newton on the determinant from a spread of starting points.
inline double turing_growth(const double J[2][2], double kappa, double alpha, double d, double mu) {
    using C = std::complex<double>;
    const double b = 1 - alpha;
    auto g = [&](C s, C* dg) {
        const C p = std::pow(s, b), dp = b * std::pow(s, b - 1);
        const C A = s - kappa * J[0][0] + mu * p, D = s - kappa * J[1][1] + d * mu * p;
        *dg = (1.0 + mu * dp) * D + A * (1.0 + d * mu * dp);
        return A * D - kappa * kappa * J[0][1] * J[1][0];
    };
    double best = -INFINITY;
    for (double re : {1e-3, 1e-2, 0.1, 1.0})
        for (double im : {0.0, 0.5, 2.0}) {
            C s(re, im), dg;
            for (int it = 0; it < 200 && std::abs(s) > 1e-300; ++it) {
                const C step = g(s, &dg) / dg;
                s -= step;
                if (std::abs(step) < 1e-15 * (1 + std::abs(s))) break;
            }
            if (std::abs(g(s, &dg)) < 1e-10 && std::abs(std::arg(s)) < std::numbers::pi) best = std::max(best, s.real());
        }
    return best;
}

}  // namespace oracle
