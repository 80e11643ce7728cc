#include "hypoineq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hypoineq/errors.hpp"

namespace hypoineq {

std::string method_name(Method m) {
    switch (m) {
        case Method::Auto: return "auto";
        case Method::Grid: return "grid";
        case Method::Polar: return "polar";
        case Method::MonteCarlo: return "mc";
    }
    return "unknown";
}

Domain Domain::ball(double radius, Point center) {
    if (!(radius > 0.0)) throw InvalidArgument("ball radius must be positive");
    Domain d;
    d.kind = Kind::Ball;
    d.r_out = radius;
    d.center = std::move(center);
    return d;
}

Domain Domain::annulus(double r_in, double r_out) {
    if (!(r_in >= 0.0 && r_out > r_in)) throw InvalidArgument("annulus needs 0 <= r_in < r_out");
    Domain d;
    d.kind = Kind::Annulus;
    d.r_in = r_in;
    d.r_out = r_out;
    return d;
}

Domain Domain::box(std::vector<double> half_widths) {
    for (double h : half_widths)
        if (!(h > 0.0)) throw InvalidArgument("box half-widths must be positive");
    Domain d;
    d.kind = Kind::Box;
    d.half_widths = std::move(half_widths);
    return d;
}

namespace {

struct AngularRule {
    std::vector<Point> dirs;
    std::vector<double> weights;
    double total() const {
        double s = 0.0;
        for (double w : weights) s += w;
        return s;
    }
};

// Quadrature on the Euclidean unit sphere S^{n-1}, n <= 3; K controls resolution.
AngularRule angular_rule(int n, int K) {
    AngularRule a;
    constexpr double pi = std::numbers::pi;
    if (n == 1) {
        a.dirs = {{-1.0}, {1.0}};
        a.weights = {1.0, 1.0};
    } else if (n == 2) {
        for (int j = 0; j < K; ++j) {
            const double th = 2.0 * pi * (j + 0.5) / K;
            a.dirs.push_back({std::cos(th), std::sin(th)});
            a.weights.push_back(2.0 * pi / K);
        }
    } else {
        const int cells = std::max(1, K / 16);
        const double h = 2.0 / cells;
        for (int c = 0; c < cells; ++c) {
            for (int i = 0; i < 8; ++i) {
                const double u = -1.0 + (c + 0.5) * h + 0.5 * h * numeric::GaussLegendre8::nodes[i];
                const double wu = 0.5 * h * numeric::GaussLegendre8::weights[i];
                const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
                for (int j = 0; j < K; ++j) {
                    const double ph = 2.0 * pi * (j + 0.5) / K;
                    a.dirs.push_back({s * std::cos(ph), s * std::sin(ph), u});
                    a.weights.push_back(wu * 2.0 * pi / K);
                }
            }
        }
    }
    return a;
}

bool polar_capable(const QuasiNorm& norm) {
    return norm.kind() == QuasiNorm::Kind::Euclidean && norm.group().dim() <= 3;
}

double outer_radius(const Domain& d, const IntegrandInfo& info) {
    double R = d.r_out;
    R = std::min(R, info.support_radius);
    if (std::isinf(R)) R = info.decay_radius;
    return R;
}

Fn checked_fn(const Fn& f, std::size_t& counter) {
    return [&f, &counter](const Point& x) {
        ++counter;
        const double y = f(x);
        if (std::isnan(y)) throw EvaluationError("integrand returned NaN", x);
        return y;
    };
}

IntegralEstimate integrate_polar(const Fn& f, const Domain& d, const QuasiNorm& norm, const IntegrandInfo& info,
                                 const IntegrationOptions& opt) {
    const auto& g = norm.group();
    const int n = g.dim();
    const double a = d.kind == Domain::Kind::Annulus ? d.r_in : 0.0;
    const double b = std::min(d.r_out, info.support_radius);
    const Point center = d.center.empty() ? g.identity() : d.center;
    std::size_t evals = 0;
    const Fn fc = checked_fn(f, evals);

    if (info.radial_profile && d.center.empty()) {
        const double sphere = angular_rule(n, 16).total();
        const auto& prof = info.radial_profile;
        auto e = numeric::integrate_positive_axis(
            [&](double r) { return prof(r) * std::pow(r, n - 1); }, a, b, info.radial_breakpoints, opt.tol);
        return {sphere * e.value, sphere * e.abs_error, Method::Polar, e.evaluations};
    }

    auto pass = [&](int K) {
        const AngularRule ang = angular_rule(n, K);
        Point y(static_cast<std::size_t>(n));
        const numeric::Fn1 h = [&](double r) {
            if (evals > opt.budget)
                throw AccuracyError("evaluation budget exhausted in polar integration", 0.0, kInf);
            numeric::CompensatedSum s;
            for (std::size_t j = 0; j < ang.dirs.size(); ++j) {
                for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = r * ang.dirs[j][static_cast<std::size_t>(i)];
                s.add(ang.weights[j] * fc(g.law(center, y)));
            }
            return s.value() * std::pow(r, n - 1);
        };
        return numeric::integrate_positive_axis(h, a, b, info.radial_breakpoints, opt.tol);
    };

    if (n == 1) {
        auto e = pass(2);
        return {e.value, e.abs_error, Method::Polar, evals};
    }
    int K = n == 2 ? 16 : 16;
    auto prev = pass(K);
    for (K *= 2; K <= 1024; K *= 2) {
        auto cur = pass(K);
        const double diff = std::abs(cur.value - prev.value);
        if (diff <= opt.tol.target(cur.value))
            return {cur.value, cur.abs_error + diff, Method::Polar, evals};
        prev = cur;
    }
    throw AccuracyError("angular refinement did not converge", prev.value, kInf);
}

// Bounding box half-widths of B(0, R) for the built-in norms.
std::vector<double> bounding_box(const HomogeneousGroup& g, double R) {
    std::vector<double> half(static_cast<std::size_t>(g.dim()));
    for (std::size_t i = 0; i < half.size(); ++i) half[i] = std::pow(R, g.weights()[i]);
    return half;
}

struct BoxSetup {
    std::vector<double> half;
    Fn integrand;
};

BoxSetup box_setup(const Fn& f, const Domain& d, const QuasiNorm& norm, const IntegrandInfo& info) {
    const auto& g = norm.group();
    if (d.kind == Domain::Kind::Box) {
        if (d.half_widths.size() != static_cast<std::size_t>(g.dim()))
            throw InvalidArgument("box dimension does not match the group");
        return {d.half_widths, f};
    }
    const double R = outer_radius(d, info);
    if (std::isinf(R))
        throw InvalidArgument("whole-group integration off the polar path needs a support or decay radius");
    const double r_in = d.kind == Domain::Kind::Annulus ? d.r_in : 0.0;
    const Point center = d.center.empty() ? g.identity() : d.center;
    const bool shifted = !d.center.empty();
    Fn h = [f, &norm, center, shifted, r_in, R](const Point& y) {
        const double r = norm(y);
        if (r >= R || r < r_in) return 0.0;
        return f(shifted ? norm.group().law(center, y) : y);
    };
    return {bounding_box(g, R), std::move(h)};
}

double tensor_gl(const Fn& f, const std::vector<double>& half, int cells, std::size_t& evals) {
    const std::size_t n = half.size();
    const int per_axis = 8 * cells;
    std::vector<std::vector<double>> nodes(n), weights(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double h = 2.0 * half[i] / cells;
        for (int c = 0; c < cells; ++c) {
            const double mid = -half[i] + (c + 0.5) * h;
            for (int j = 0; j < 8; ++j) {
                nodes[i].push_back(mid + 0.5 * h * numeric::GaussLegendre8::nodes[j]);
                weights[i].push_back(0.5 * h * numeric::GaussLegendre8::weights[j]);
            }
        }
    }
    std::vector<int> idx(n, 0);
    Point x(n);
    numeric::CompensatedSum sum;
    while (true) {
        double w = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = nodes[i][static_cast<std::size_t>(idx[i])];
            w *= weights[i][static_cast<std::size_t>(idx[i])];
        }
        const double y = f(x);
        ++evals;
        if (std::isnan(y)) throw EvaluationError("integrand returned NaN", x);
        sum.add(w * y);
        std::size_t k = 0;
        while (k < n && ++idx[k] == per_axis) idx[k++] = 0;
        if (k == n) break;
    }
    return sum.value();
}

IntegralEstimate integrate_grid(const Fn& f, const Domain& d, const QuasiNorm& norm, const IntegrandInfo& info,
                                const IntegrationOptions& opt) {
    const auto setup = box_setup(f, d, norm, info);
    const std::size_t n = setup.half.size();
    std::size_t evals = 0;
    auto nodes_for = [n](int cells) { return static_cast<std::size_t>(std::pow(8.0 * cells, static_cast<double>(n))); };
    int cells = 2;
    double prev = tensor_gl(setup.integrand, setup.half, cells, evals);
    while (true) {
        cells *= 2;
        if (evals + nodes_for(cells) > opt.budget)
            throw AccuracyError("grid integration exhausted its budget", prev, kInf);
        const double cur = tensor_gl(setup.integrand, setup.half, cells, evals);
        const double diff = std::abs(cur - prev);
        if (diff <= opt.tol.target(cur)) return {cur, diff, Method::Grid, evals};
        prev = cur;
    }
}

IntegralEstimate integrate_mc(const Fn& f, const Domain& d, const QuasiNorm& norm, const IntegrandInfo& info,
                              const IntegrationOptions& opt) {
    const auto setup = box_setup(f, d, norm, info);
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double volume = 1.0;
    for (double h : setup.half) volume *= 2.0 * h;
    const std::size_t N = std::min<std::size_t>(opt.budget, 2'000'000);
    numeric::CompensatedSum s1, s2;
    Point x(setup.half.size());
    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = setup.half[i] * u(rng);
        const double y = setup.integrand(x);
        if (std::isnan(y)) throw EvaluationError("integrand returned NaN", x);
        s1.add(y);
        s2.add(y * y);
    }
    const double mean = s1.value() / static_cast<double>(N);
    const double var = std::max(0.0, s2.value() / static_cast<double>(N) - mean * mean);
    return {volume * mean, volume * 2.58 * std::sqrt(var / static_cast<double>(N)), Method::MonteCarlo, N};
}

}  // namespace

IntegralEstimate integrate(const Fn& f, const Domain& domain, const QuasiNorm& norm, const IntegrandInfo& info,
                           const IntegrationOptions& opt) {
    if (!(opt.tol.abs > 0.0 || opt.tol.rel > 0.0)) throw InvalidArgument("tolerance must be positive");
    if (opt.budget < 1) throw InvalidArgument("budget must be at least 1");
    Method m = opt.method;
    if (m == Method::Auto) {
        if (domain.kind == Domain::Kind::Box)
            m = Method::Grid;
        else if (polar_capable(norm))
            m = Method::Polar;
        else if (norm.group().dim() <= 3)
            m = Method::Grid;
        else
            m = Method::MonteCarlo;
    }
    switch (m) {
        case Method::Polar:
            if (!polar_capable(norm) || domain.kind == Domain::Kind::Box)
                throw UnsupportedOperation("polar path needs a Euclidean norm on R^1..R^3 and a radial domain");
            return integrate_polar(f, domain, norm, info, opt);
        case Method::Grid: return integrate_grid(f, domain, norm, info, opt);
        case Method::MonteCarlo: return integrate_mc(f, domain, norm, info, opt);
        case Method::Auto: break;
    }
    throw InvalidArgument("unknown integration method");
}

IntegralEstimate lp_norm(const Fn& f, double p, const Domain& domain, const QuasiNorm& norm, const IntegrandInfo& info,
                         const IntegrationOptions& opt) {
    if (std::isinf(p)) {
        // Maximum over a fixed rule's nodes.
        Domain d = domain;
        if (d.kind == Domain::Kind::Whole) d = Domain::ball(outer_radius(d, info));
        const auto rule = make_rule(d, norm, info.radial_breakpoints);
        double m = 0.0;
        for (const auto& x : rule.nodes) m = std::max(m, std::abs(f(x)));
        return {m, 0.0, Method::Grid, rule.size()};
    }
    if (!(p >= 1.0)) throw InvalidArgument("L^p norm needs p >= 1");
    IntegrandInfo pinfo = info;
    if (info.radial_profile) {
        const Radial prof = info.radial_profile;
        pinfo.radial_profile = [prof, p](double r) { return std::pow(std::abs(prof(r)), p); };
    }
    const auto e = integrate([&f, p](const Point& x) { return std::pow(std::abs(f(x)), p); }, domain, norm, pinfo, opt);
    if (e.value <= 0.0) return {0.0, 0.0, e.method, e.nodes};
    const double v = std::pow(e.value, 1.0 / p);
    return {v, v / p * e.abs_error / e.value, e.method, e.nodes};
}

IntegralEstimate radial_integral(const Radial& g, double r_in, double r_out, const QuasiNorm& norm,
                                 const std::vector<double>& breakpoints, numeric::Tolerance tol) {
    if (!(r_in >= 0.0) || !(r_out >= r_in)) throw InvalidArgument("radial_integral needs 0 <= r_in <= r_out");
    if (r_in == r_out) return {0.0, 0.0, Method::Polar, 0};
    const double Q = norm.group().homogeneous_dim();
    const auto sphere = norm.sphere_measure();
    try {
        const auto e = numeric::integrate_positive_axis(
            [&g, Q](double r) {
                const double w = std::pow(r, Q - 1.0);
                if (w == 0.0) return 0.0;
                const double v = g(r);
                return v == 0.0 ? 0.0 : v * w;
            },
            r_in, r_out, breakpoints, tol);
        if (!std::isfinite(e.value)) return {kInf, kInf, Method::Polar, e.evaluations, true};
        return {sphere.value * e.value, sphere.value * e.abs_error + sphere.abs_error * std::abs(e.value),
                Method::Polar, e.evaluations};
    } catch (const DivergenceError&) {
        return {kInf, kInf, Method::Polar, 0, true};
    }
}

double QuadratureRule::apply(const Fn& f) const {
    numeric::CompensatedSum s;
    for (std::size_t i = 0; i < nodes.size(); ++i) s.add(weights[i] * f(nodes[i]));
    return s.value();
}

double QuadratureRule::apply_radial(const Radial& g) const {
    numeric::CompensatedSum s;
    for (std::size_t i = 0; i < nodes.size(); ++i) s.add(weights[i] * g(radii[i]));
    return s.value();
}

QuadratureRule make_rule(const Domain& domain, const QuasiNorm& norm, const std::vector<double>& radial_breakpoints,
                         const RuleOptions& opt) {
    if (domain.kind != Domain::Kind::Ball && domain.kind != Domain::Kind::Annulus)
        throw InvalidArgument("make_rule needs a ball or an annulus");
    if (!domain.center.empty()) throw InvalidArgument("make_rule works on centred domains");
    const auto& g = norm.group();
    const double R = domain.r_out;
    const double r_in = domain.kind == Domain::Kind::Annulus ? domain.r_in : 0.0;
    QuadratureRule rule;

    if (polar_capable(norm)) {
        const int n = g.dim();
        const AngularRule ang = angular_rule(n, opt.angular);
        std::vector<double> cuts;
        const double lo = r_in > 0.0 ? r_in : R * opt.r_min_ratio;
        if (r_in == 0.0) cuts.push_back(0.0);
        for (int k = 0; k <= opt.radial_cells; ++k)
            cuts.push_back(lo * std::pow(R / lo, static_cast<double>(k) / opt.radial_cells));
        for (double b : radial_breakpoints)
            if (b > r_in && b < R) cuts.push_back(b);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const double h = (cuts[c + 1] - cuts[c]) / opt.sub_cells;
            for (int s = 0; s < opt.sub_cells; ++s) {
                const double mid = cuts[c] + (s + 0.5) * h;
                for (int j = 0; j < 8; ++j) {
                    const double r = mid + 0.5 * h * numeric::GaussLegendre8::nodes[j];
                    const double wr = 0.5 * h * numeric::GaussLegendre8::weights[j] * std::pow(r, n - 1);
                    for (std::size_t a = 0; a < ang.dirs.size(); ++a) {
                        Point x(static_cast<std::size_t>(n));
                        for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = r * ang.dirs[a][static_cast<std::size_t>(i)];
                        rule.nodes.push_back(std::move(x));
                        rule.weights.push_back(wr * ang.weights[a]);
                        rule.radii.push_back(r);
                    }
                }
            }
        }
        return rule;
    }

    const auto half = bounding_box(g, R);
    const std::size_t n = half.size();
    const int per_axis = 8 * opt.grid_cells;
    std::vector<std::vector<double>> nodes(n), weights(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double h = 2.0 * half[i] / opt.grid_cells;
        for (int c = 0; c < opt.grid_cells; ++c) {
            const double mid = -half[i] + (c + 0.5) * h;
            for (int j = 0; j < 8; ++j) {
                nodes[i].push_back(mid + 0.5 * h * numeric::GaussLegendre8::nodes[j]);
                weights[i].push_back(0.5 * h * numeric::GaussLegendre8::weights[j]);
            }
        }
    }
    std::vector<int> idx(n, 0);
    while (true) {
        Point x(n);
        double w = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = nodes[i][static_cast<std::size_t>(idx[i])];
            w *= weights[i][static_cast<std::size_t>(idx[i])];
        }
        const double r = norm(x);
        if (r < R && r >= r_in) {
            rule.nodes.push_back(std::move(x));
            rule.weights.push_back(w);
            rule.radii.push_back(r);
        }
        std::size_t k = 0;
        while (k < n && ++idx[k] == per_axis) idx[k++] = 0;
        if (k == n) break;
    }
    return rule;
}

double hardy_average(const Radial& f, double radius, const QuasiNorm& norm, const std::vector<double>& breakpoints) {
    if (radius <= 0.0) return 0.0;
    const auto e = radial_integral(f, 0.0, radius, norm, breakpoints);
    if (e.divergent) throw DivergenceError("Hardy average diverges at the origin", kInf, kInf);
    return e.value;
}

double hardy_tail(const Radial& f, double radius, const QuasiNorm& norm, const std::vector<double>& breakpoints) {
    const auto e = radial_integral(f, radius, kInf, norm, breakpoints);
    if (e.divergent) throw DivergenceError("Hardy tail integral diverges", kInf, kInf);
    return e.value;
}

MinkowskiReport minkowski_check(const Radial& f1, const Radial& f2, double theta, const MinkowskiGrid& grid) {
    if (!(theta >= 1.0)) throw InvalidArgument("Minkowski check needs theta >= 1");
    const numeric::Tolerance tol{1e-15, 1e-12};
    const double U = grid.upper;
    auto integral = [&](const Radial& f, double a, double b) {
        if (b <= a) return 0.0;
        if (std::isinf(b)) return numeric::integrate_positive_axis(f, a, b, grid.breakpoints, tol).value;
        return numeric::integrate_interval(f, a, b, grid.breakpoints, tol).value;
    };
    auto outer = [&](const Radial& f) {
        return std::isinf(U) ? numeric::integrate_positive_axis(f, 0.0, U, grid.breakpoints, tol).value
                             : numeric::integrate_interval(f, 0.0, U, grid.breakpoints, tol).value;
    };
    MinkowskiReport out;
    out.lhs = outer([&](double x) {
        const double v = f1(x);
        if (v == 0.0) return 0.0;
        return v * std::pow(integral(f2, 0.0, x), theta);
    });
    const double inner = outer([&](double z) {
        const double v = f2(z);
        if (v == 0.0) return 0.0;
        return v * std::pow(integral(f1, z, U), 1.0 / theta);
    });
    out.rhs = std::pow(inner, theta);
    out.holds = out.lhs <= out.rhs * (1.0 + 1e-8);
    return out;
}

}  // namespace hypoineq
