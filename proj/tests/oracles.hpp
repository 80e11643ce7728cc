#pragma once

// Reference values computed independently of the library: closed forms and
// Boost.Math quadrature.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

namespace oracle {

constexpr double pi = std::numbers::pi;
constexpr double e = std::numbers::e;

inline double heat(int n, double t, double r) { return std::pow(4.0 * pi * t, -0.5 * n) * std::exp(-r * r / (4.0 * t)); }

/// Gamma(a/2)^{-1} int_0^inf t^{a/2-1} e^{-damping t} h_t(r) dt.
inline double potential(int n, double a, double r, double damping) {
    boost::math::quadrature::exp_sinh<double> q;
    auto f = [=](double t) { return std::pow(t, 0.5 * a - 1.0) * std::exp(-damping * t) * heat(n, t, r); };
    return q.integrate(f) / std::tgamma(0.5 * a);
}

inline double riesz(int n, double a, double r) { return potential(n, a, r, 0.0); }
inline double bessel(int n, double a, double r) { return potential(n, a, r, 1.0); }

/// Newtonian potential of exp(-|x|^2/2) on R^3 and the norm || u / |x| ||_2.
inline double newton_u(double r) {
    const double M = std::pow(2.0 * pi, 1.5);
    if (r == 0.0) return M * std::sqrt(2.0 / pi) / (4.0 * pi);
    return M * std::erf(r / std::sqrt(2.0)) / (4.0 * pi * r);
}
inline double newton_weighted_l2() {
    boost::math::quadrature::exp_sinh<double> q;
    const double I = q.integrate([](double r) { const double u = newton_u(r); return u * u; });
    return std::sqrt(4.0 * pi * I);
}

/// int int exp(-(x^2 + y^2)/2) |x - y|^{-lambda} dx dy on R.
inline double hls_gauss_1d(double lambda) {
    return std::sqrt(2.0 * pi) * std::pow(2.0, 0.5 - lambda) * std::tgamma(0.5 * (1.0 - lambda));
}

/// Gamma(q/p' + 2)^{1/q} / (q / (e p'))^{1/p'}.
inline double gamma_ratio(double p, double q) {
    const double pp = p / (p - 1.0);
    return std::exp(boost::math::lgamma(q / pp + 2.0) / q) / std::pow(q / (e * pp), 1.0 / pp);
}

/// sum_{k >= k0} k^k / k! y^k by direct summation in long double.
inline double moser_series(double y, int k0) {
    long double s = 0.0L;
    for (int k = k0; k < 100000; ++k) {
        const long double t = std::exp(static_cast<long double>(k) * std::log(static_cast<long double>(k) * y) -
                                       std::lgamma(static_cast<long double>(k) + 1.0L));
        s += t;
        if (t < 1e-22L * s) break;
    }
    return static_cast<double>(s);
}

/// int_{-inf}^{inf} |u|^{-lambda} exp(-u^2/2) du by tanh-sinh on (0, inf) pieces.
inline double abs_power_gauss(double lambda) {
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es;
    auto f = [=](double u) { return std::pow(u, -lambda) * std::exp(-0.5 * u * u); };
    return 2.0 * (ts.integrate(f, 0.0, 1.0) + es.integrate(f, 1.0, std::numeric_limits<double>::infinity()));
}

}  // namespace oracle
