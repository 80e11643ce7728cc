#include "hypoineq/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "hypoineq/errors.hpp"

namespace hypoineq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr numeric::Tolerance kKernelTol{0.0, 1e-13};

void check_order(const HeatOperator& op, double a) {
    if (!(a > 0.0 && a < op.homogeneous_dim()))
        throw InvalidArgument("kernel order a must lie in (0, Q)");
}

// int_0^inf u^{a/2-1} (4 pi u)^{-n/2} exp(-1/(4u)) du, memoised per (n, a).
double riesz_profile_integral(double n, double a) {
    static std::mutex mutex;
    static std::map<std::pair<double, double>, double> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        const auto it = cache.find({n, a});
        if (it != cache.end()) return it->second;
    }
    const numeric::Fn1 g = [a, n](double u) {
        return std::pow(u, 0.5 * a - 1.0) * std::pow(4.0 * kPi * u, -0.5 * n) * std::exp(-1.0 / (4.0 * u));
    };
    const double J = numeric::integrate_positive_axis(g, 0.0, kInf, {0.25}, kKernelTol).value;
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(std::make_pair(n, a), J);
    return J;
}

}  // namespace

HeatOperator::HeatOperator(const HomogeneousGroup& g) : n_(g.dim()) {
    if (g.kind() != HomogeneousGroup::Kind::Abelian || !g.is_stratified())
        throw UnsupportedOperation("the heat kernel is available on R^n with unit weights only");
}

double HeatOperator::radial(double t, double r) const {
    if (!(t > 0.0)) throw InvalidArgument("heat kernel time must be positive");
    return std::pow(4.0 * kPi * t, -0.5 * n_) * std::exp(-r * r / (4.0 * t));
}

double HeatOperator::operator()(double t, const Point& x) const { return radial(t, euclidean_length(x)); }

IntegralEstimate HeatOperator::mass(double t) const {
    const auto norm = QuasiNorm::euclidean(HomogeneousGroup::euclidean(n_));
    return radial_integral([this, t](double r) { return radial(t, r); }, 0.0, kInf, norm, {std::sqrt(t)});
}

double heat_convolution_closed_form_1d(double t, double s, double x) {
    // int (4 pi t)^{-1/2} e^{-(x-y)^2/4t} (4 pi s)^{-1/2} e^{-y^2/4s} dy
    const double pre = 1.0 / (4.0 * kPi * std::sqrt(t * s));
    return pre * std::sqrt(4.0 * kPi * t * s / (t + s)) * std::exp(-x * x / (4.0 * (t + s)));
}

double heat_convolution_numeric_1d(double t, double s, double x) {
    const numeric::Fn1 f = [t, s, x](double y) {
        return std::pow(4.0 * kPi * t, -0.5) * std::exp(-(x - y) * (x - y) / (4.0 * t)) * std::pow(4.0 * kPi * s, -0.5) *
               std::exp(-y * y / (4.0 * s));
    };
    const double w = 12.0 * std::sqrt(std::max(t, s));
    const double c = x * s / (t + s);
    return numeric::adaptive_gk15(f, c - w, c + w, {1e-300, 1e-14}).value;
}

double riesz_kernel(const HeatOperator& op, double a, double r) {
    check_order(op, a);
    if (!(r > 0.0)) throw InvalidArgument("Riesz kernel is evaluated away from the identity");
    const double n = op.homogeneous_dim();
    return std::pow(r, a - n) * riesz_profile_integral(n, a) / std::tgamma(0.5 * a);
}

double riesz_kernel(const HeatOperator& op, double a, const Point& x) { return riesz_kernel(op, a, euclidean_length(x)); }

double riesz_closed_form(int n, double a, double r) {
    return std::tgamma(0.5 * (n - a)) / (std::pow(4.0, 0.5 * a) * std::pow(kPi, 0.5 * n) * std::tgamma(0.5 * a)) *
           std::pow(r, a - n);
}

double bessel_kernel(const HeatOperator& op, double a, double r) {
    check_order(op, a);
    if (!(r > 0.0)) throw InvalidArgument("Bessel kernel is evaluated away from the identity");
    const double n = op.homogeneous_dim();
    const double r2 = r * r;
    // Log-space integrand; peak of exp(-r^2 u - 1/(4u)) at u = 1/(2r).
    const numeric::Fn1 g = [a, n, r2](double u) {
        const double lg = (0.5 * a - 1.0) * std::log(u) - 0.5 * n * std::log(4.0 * kPi * u) - r2 * u - 1.0 / (4.0 * u);
        return std::exp(lg);
    };
    const double peak = 1.0 / (2.0 * r);
    const double J = numeric::integrate_positive_axis(g, 0.0, kInf, {peak, 0.25}, {1e-300, 1e-12}).value;
    return std::pow(r, a - n) * J / std::tgamma(0.5 * a);
}

double bessel_kernel(const HeatOperator& op, double a, const Point& x) {
    return bessel_kernel(op, a, euclidean_length(x));
}

std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> v;
    for (int i = 0; i < points; ++i)
        v.push_back(lo * std::pow(hi / lo, points == 1 ? 0.0 : static_cast<double>(i) / (points - 1)));
    return v;
}

KernelBound riesz_bound(const HeatOperator& op, double a, const std::vector<double>& radii) {
    KernelBound b;
    const double Q = op.homogeneous_dim();
    for (double r : radii) {
        const double v = std::abs(riesz_kernel(op, a, r)) * std::pow(r, Q - a);
        b.r.push_back(r);
        b.ratio.push_back(v);
        if (v > b.C) {
            b.C = v;
            b.argmax_r = r;
        }
    }
    b.bounded = std::isfinite(b.C);
    return b;
}

KernelBound bessel_bound(const HeatOperator& op, double a, BesselRegime regime, const std::vector<double>& radii) {
    KernelBound b;
    const double Q = op.homogeneous_dim();
    for (double r : radii) {
        if (regime == BesselRegime::Near && r > 1.0) continue;
        if (regime == BesselRegime::Far && r < 1.0) continue;
        const double B = std::abs(bessel_kernel(op, a, r));
        const double v = regime == BesselRegime::Near ? B * std::pow(r, Q - a) : B * std::pow(r, Q);
        b.r.push_back(r);
        b.ratio.push_back(v);
        if (v > b.C) {
            b.C = v;
            b.argmax_r = r;
        }
    }
    if (b.r.size() < 2) throw InvalidArgument("Bessel bound needs at least two radii in the regime");
    // Growth at the edge that approaches the limit (r -> 0 near, r -> inf far).
    const std::size_t edge = regime == BesselRegime::Near ? 0 : b.r.size() - 1;
    const std::size_t inner = regime == BesselRegime::Near ? 1 : b.r.size() - 2;
    b.bounded = std::isfinite(b.C) && b.ratio[edge] <= b.ratio[inner] * (1.0 + 1e-3);
    return b;
}

IntegralEstimate convolve(const Fn& f, const IntegrandInfo& f_info, const Fn& g, const IntegrandInfo& g_info,
                          const Point& x, const QuasiNorm& norm, const IntegrationOptions& opt) {
    const auto& grp = norm.group();
    const double rx = euclidean_length(x);
    const double f_rad = std::min(f_info.support_radius, f_info.decay_radius);
    if (norm.kind() == QuasiNorm::Kind::Euclidean && grp.dim() <= 3 && std::isfinite(f_rad) && rx > 1.5 * f_rad) {
        // x far from the support of f: g is smooth there, integrate in y around the origin.
        const Fn h = [&](const Point& y) {
            const double fy = f(y);
            if (fy == 0.0) return 0.0;
            Point z(y.size());
            for (std::size_t i = 0; i < y.size(); ++i) z[i] = x[i] - y[i];
            return fy * g(z);
        };
        IntegrationOptions o = opt;
        o.method = Method::Polar;
        IntegrandInfo info = f_info;
        info.radial_profile = nullptr;
        return integrate(h, Domain::whole(), norm, info, o);
    }
    if (norm.kind() == QuasiNorm::Kind::Euclidean && grp.dim() <= 3) {
        // (f * g)(x) = int f(x - z) g(z) dz, polar in z about the singularity of g.
        IntegrandInfo info;
        info.radial_breakpoints = g_info.radial_breakpoints;
        std::vector<double> f_marks = f_info.radial_breakpoints;
        if (std::isfinite(f_rad)) f_marks.push_back(f_rad);
        for (double b : f_marks) {
            for (double v : {rx - b, b - rx, rx + b})
                if (v > 0.0) info.radial_breakpoints.push_back(v);
        }
        if (std::isfinite(f_rad)) info.support_radius = rx + f_rad;
        if (std::isfinite(g_info.support_radius)) info.support_radius = std::min(info.support_radius, g_info.support_radius);
        std::sort(info.radial_breakpoints.begin(), info.radial_breakpoints.end());
        const Fn h = [&](const Point& z) {
            const double gz = g(z);
            if (gz == 0.0) return 0.0;
            Point y(z.size());
            for (std::size_t i = 0; i < z.size(); ++i) y[i] = x[i] - z[i];
            return f(y) * gz;
        };
        IntegrationOptions o = opt;
        o.method = Method::Polar;
        try {
            return integrate(h, Domain::whole(), norm, info, o);
        } catch (const DivergenceError& e) {
            throw AccuracyError(std::string("convolution diverges: ") + e.what(), e.partial_value(), kInf);
        }
    }
    const Fn h = [&](const Point& y) {
        const double fy = f(y);
        if (fy == 0.0) return 0.0;
        return fy * g(grp.law(grp.inverse(y), x));
    };
    IntegrandInfo info;
    info.support_radius = f_info.support_radius;
    info.decay_radius = f_info.decay_radius;
    return integrate(h, Domain::whole(), norm, info, opt);
}

}  // namespace hypoineq
