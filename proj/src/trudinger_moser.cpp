#include "hypoineq/trudinger_moser.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "hypoineq/errors.hpp"
#include "hypoineq/inequalities.hpp"
#include "hypoineq/numeric.hpp"
#include "hypoineq/periodic.hpp"

namespace hypoineq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

bool is_unit_abelian(const HomogeneousGroup& g) {
    return g.kind() == HomogeneousGroup::Kind::Abelian && g.is_stratified();
}

void require_unit_abelian(const QuasiNorm& norm, const char* what) {
    if (!is_unit_abelian(norm.group()))
        throw UnsupportedOperation(std::string(what) + " uses the spectral Laplacian and needs R^n with unit weights");
}

bool at_identity(const Point& c) {
    return std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; });
}

double reach(const TrialFunction& f) {
    const double r = std::min(f.support_radius, f.decay_radius);
    if (!std::isfinite(r)) throw PreconditionViolation("trial function " + f.label() + " has no finite support or decay radius");
    return r;
}

double checked_x(double p, double alpha, double t) {
    if (!(p > 1.0)) throw InvalidArgument("phi_truncated needs p > 1");
    if (!(alpha >= 0.0)) throw InvalidArgument("phi_truncated needs alpha >= 0");
    if (!(t >= 0.0)) throw InvalidArgument("phi_truncated needs t >= 0");
    const double x = alpha * std::pow(t, p / (p - 1.0));
    if (x > 700.0) {
        std::ostringstream msg;
        msg << "phi_truncated overflow: alpha t^{p'} = " << x << " > 700 (p=" << p << ", alpha=" << alpha
            << ", t=" << t << ")";
        throw RangeError(msg.str());
    }
    return x;
}

double series_from(double x, int k0) {
    if (x == 0.0) return 0.0;
    numeric::CompensatedSum s;
    double term = std::exp(k0 * std::log(x) - std::lgamma(k0 + 1.0));
    for (int k = k0;; ++k) {
        s.add(term);
        term *= x / (k + 1.0);
        if (k > x && term < 1e-17 * s.value()) break;
    }
    return s.value();
}

double exp_minus_partial(double x, int k0) {
    numeric::CompensatedSum s;
    s.add(std::expm1(x));
    double term = 1.0;
    for (int k = 1; k < k0; ++k) {
        term *= x / k;
        s.add(-term);
    }
    return s.value();
}

// Shared node set: |f| values and measure weights with |x|^{-beta} folded in.
struct Nodes {
    std::vector<double> fabs;
    std::vector<double> weight;
};

// Graded Gauss-Legendre rule for |sphere| int_0^R g(r) r^{Q-1} dr.
void radial_rule(double R, const std::vector<double>& breakpoints, const QuasiNorm& norm, const RuleOptions& o,
                 std::vector<double>& r_out, std::vector<double>& w_out) {
    const double Q = norm.group().homogeneous_dim();
    const double S = norm.sphere_measure().value;
    const double r_min = R * o.r_min_ratio;
    std::vector<double> edges{0.0};
    for (int i = 0; i <= o.radial_cells; ++i)
        edges.push_back(r_min * std::pow(R / r_min, static_cast<double>(i) / o.radial_cells));
    for (double b : breakpoints)
        if (b > r_min && b < R) edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    using GL = numeric::GaussLegendre8;
    for (std::size_t c = 0; c + 1 < edges.size(); ++c) {
        const double a = edges[c], b = edges[c + 1];
        const int sub = std::max(1, o.sub_cells);
        for (int s = 0; s < sub; ++s) {
            const double lo = a + (b - a) * s / sub, hi = a + (b - a) * (s + 1) / sub;
            const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
            for (std::size_t i = 0; i < GL::nodes.size(); ++i) {
                const double r = mid + half * GL::nodes[i];
                r_out.push_back(r);
                w_out.push_back(half * GL::weights[i] * S * std::pow(r, Q - 1.0));
            }
        }
    }
}

Nodes build_nodes(const TMSpec& spec, const TrialFunction& f, const RuleOptions& o) {
    Nodes nd;
    const double beta = spec.beta;
    const bool local = spec.scope == TMScope::Local;
    const double R = local ? spec.radius : reach(f);
    if (f.is_radial() && (!local || at_identity(spec.center))) {
        std::vector<double> r, w;
        radial_rule(R, f.breakpoints, spec.norm, o, r, w);
        for (std::size_t i = 0; i < r.size(); ++i) {
            nd.fabs.push_back(std::abs(f.profile(r[i])));
            nd.weight.push_back(beta == 0.0 ? w[i] : w[i] * std::pow(r[i], -beta));
        }
        return nd;
    }
    const Domain dom = local ? Domain::ball(R, spec.center) : Domain::ball(R);
    const auto rule = make_rule(dom, spec.norm, f.breakpoints, o);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double rx = rule.radii[i];
        double w = rule.weights[i];
        if (beta != 0.0) w = rx > 0.0 ? w * std::pow(rx, -beta) : 0.0;
        nd.fabs.push_back(std::abs(f(rule.nodes[i])));
        nd.weight.push_back(w);
    }
    return nd;
}

double apply_phi(const Nodes& nd, double p, double alpha) {
    numeric::CompensatedSum s;
    for (std::size_t i = 0; i < nd.fabs.size(); ++i) {
        if (nd.weight[i] == 0.0 || nd.fabs[i] == 0.0) continue;
        s.add(nd.weight[i] * phi_truncated(p, alpha, nd.fabs[i]));
    }
    return s.value();
}

RuleOptions coarser(const RuleOptions& o) {
    RuleOptions c = o;
    c.radial_cells = std::max(4, o.radial_cells / 2);
    c.angular = std::max(8, o.angular / 2);
    c.grid_cells = std::max(2, o.grid_cells / 2);
    return c;
}

double lp_whole(const TrialFunction& f, double p, const QuasiNorm& norm) { return weighted_lp(f, 0.0, p, norm).value; }

double ball_weighted_lq(const TrialFunction& f, const QuasiNorm& norm, double q, double beta, double radius,
                        const Point& center) {
    if (f.is_radial() && at_identity(center)) {
        const Radial prof = f.profile;
        const auto e = radial_integral(
            [&](double r) {
                const double v = std::abs(prof(r));
                if (v == 0.0 || r == 0.0) return 0.0;
                return std::pow(v, q) * (beta == 0.0 ? 1.0 : std::pow(r, -beta));
            },
            0.0, radius, norm, f.breakpoints, {0.0, 1e-10});
        return std::pow(e.value, 1.0 / q);
    }
    IntegrandInfo info;
    info.radial_breakpoints = f.breakpoints;
    const Fn h = [&](const Point& x) {
        const double v = std::abs(f(x));
        if (v == 0.0) return 0.0;
        const double rx = norm(x);
        if (beta != 0.0 && rx == 0.0) return 0.0;
        return std::pow(v, q) * (beta == 0.0 ? 1.0 : std::pow(rx, -beta));
    };
    const auto e = integrate(h, Domain::ball(radius, center), norm, info);
    return std::pow(e.value, 1.0 / q);
}

double grad_h_norm(const TrialFunction& f, const QuasiNorm& norm, double p) {
    const double Q = norm.group().homogeneous_dim();
    if (std::abs(p - Q) > 1e-12) throw InvalidArgument("the horizontal-gradient normalisation needs p = Q");
    return function_norm(f, NormSpec::grad_q(), norm);
}

}  // namespace

int first_retained_index(double p) {
    if (!(p > 1.0)) throw InvalidArgument("the truncated exponential needs p > 1");
    return static_cast<int>(std::ceil(p - 1.0));
}

double phi_truncated(double p, double alpha, double t) {
    const double x = checked_x(p, alpha, t);
    const int k0 = first_retained_index(p);
    if (x < 1.0) return series_from(x, k0);
    return exp_minus_partial(x, k0);
}

double phi_truncated_series(double p, double alpha, double t) {
    return series_from(checked_x(p, alpha, t), first_retained_index(p));
}

double TMSpec::mu_value() const {
    const double Q = norm.group().homogeneous_dim();
    return mu > 0.0 ? mu : 2.0 * Q / (Q - beta);
}

void TMSpec::validate() const {
    const double Q = norm.group().homogeneous_dim();
    if (!(p > 1.0)) throw InvalidArgument("Trudinger-Moser spec needs p > 1");
    if (!(alpha >= 0.0)) throw InvalidArgument("Trudinger-Moser spec needs alpha >= 0");
    if (!(beta >= 0.0 && beta < Q)) throw InvalidArgument("Trudinger-Moser spec needs 0 <= beta < Q");
    if (scope == TMScope::Local && !(radius > 0.0)) throw InvalidArgument("Trudinger-Moser ball radius must be positive");
    if (!center.empty() && static_cast<int>(center.size()) != norm.group().dim())
        throw InvalidArgument("ball centre has the wrong dimension");
    if (scope == TMScope::Global && !(mu_value() > Q / (Q - beta)))
        throw InvalidArgument("global Trudinger-Moser spec needs mu > Q / (Q - beta)");
}

double local_sobolev_norm(const TrialFunction& f, const QuasiNorm& norm, double a, double p, double radius,
                          const Point& center, int M) {
    require_unit_abelian(norm, "the local Sobolev norm");
    const int n = norm.group().dim();
    const auto grid = GridFunction::sample(f, box_for(f, n, M));
    check_guard(grid);
    if (grid.box.h() > radius / 8.0) {
        std::ostringstream msg;
        msg << "grid spacing " << grid.box.h() << " is too coarse for a ball of radius " << radius << " at M = " << M;
        throw AccuracyError(msg.str(), std::nan(""), std::nan(""));
    }
    const auto D = a == 0.0 ? grid : frac_laplacian(grid, 0.5 * a);
    const double hn = std::pow(grid.box.h(), n);
    numeric::CompensatedSum s;
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        Point x = grid.node(i);
        if (!center.empty())
            for (std::size_t j = 0; j < x.size(); ++j) x[j] -= center[j];
        if (!(norm(x) < radius)) continue;
        s.add((std::pow(std::abs(D.values[i]), p) + std::pow(std::abs(grid.values[i]), p)) * hn);
    }
    return std::pow(s.value(), 1.0 / p);
}

double tm_normalization(const TMSpec& spec, const TrialFunction& f) {
    spec.validate();
    const double Q = spec.norm.group().homogeneous_dim();
    if (spec.normalization == TMNormalization::GradH) return grad_h_norm(f, spec.norm, spec.p);
    require_unit_abelian(spec.norm, "the Sobolev normalisation");
    if (spec.scope == TMScope::Local)
        return local_sobolev_norm(f, spec.norm, Q / spec.p, spec.p, spec.radius, spec.center, spec.spectral_M);
    return homogeneous_sobolev_norm(f, Q / spec.p, spec.p, spec.norm.group().dim(), spec.spectral_M);
}

TrialFunction tm_normalize(const TMSpec& spec, const TrialFunction& f, double target) {
    const double v = tm_normalization(spec, f);
    if (!(v > 0.0)) throw DegenerateInput("cannot normalise " + f.label() + ": its norm vanishes");
    return f.scaled(target / v);
}

TMEvaluation tm_functional(const TMSpec& spec, const TrialFunction& f) {
    spec.validate();
    TMEvaluation ev;
    ev.normalization = tm_normalization(spec, f);
    if (ev.normalization > 1.0 + 1e-9) {
        std::ostringstream msg;
        msg << "Trudinger-Moser normalisation violated: norm of " << f.label() << " is " << ev.normalization
            << " > 1";
        throw PreconditionViolation(msg.str());
    }
    const auto nodes = build_nodes(spec, f, spec.rule);
    const auto coarse = build_nodes(spec, f, coarser(spec.rule));
    ev.functional.value = apply_phi(nodes, spec.p, spec.alpha);
    ev.functional.abs_error = std::abs(ev.functional.value - apply_phi(coarse, spec.p, spec.alpha));
    ev.functional.nodes = nodes.fabs.size();
    ev.functional.method = f.is_radial() ? Method::Polar : Method::Grid;
    if (spec.scope == TMScope::Local) {
        ev.rhs_base = std::pow(ev.normalization, spec.p);
    } else {
        const double F = lp_whole(f, spec.p, spec.norm);
        ev.rhs_base = std::pow(F, spec.p) + std::pow(F, spec.p / spec.mu_value());
    }
    ev.ratio = ev.rhs_base > 0.0 ? ev.functional.value / ev.rhs_base : 0.0;
    return ev;
}

std::vector<TermCheck> term_vs_sum(const TMSpec& spec, const TrialFunction& f, int k_max) {
    spec.validate();
    const auto nd = build_nodes(spec, f, spec.rule);
    const double functional = apply_phi(nd, spec.p, spec.alpha);
    const double pp = spec.p_prime();
    std::vector<TermCheck> out;
    for (int k = first_retained_index(spec.p); k <= k_max; ++k) {
        numeric::CompensatedSum s;
        for (std::size_t i = 0; i < nd.fabs.size(); ++i)
            if (nd.weight[i] != 0.0 && nd.fabs[i] != 0.0) s.add(nd.weight[i] * std::pow(nd.fabs[i], pp * k));
        TermCheck t;
        t.k = k;
        t.term = std::exp(k * std::log(spec.alpha) - std::lgamma(k + 1.0)) * s.value();
        if (spec.alpha == 0.0) t.term = 0.0;
        t.functional = functional;
        t.slack = functional - t.term;
        out.push_back(t);
    }
    return out;
}

double moser_series_log_term(int k, double y) {
    if (k == 0) return 0.0;
    return k * std::log(static_cast<double>(k)) - std::lgamma(k + 1.0) + k * std::log(y);
}

double moser_series(double y, int k0) {
    if (!(y >= 0.0)) throw InvalidArgument("series argument must be nonnegative");
    const double rho = kE * y;
    if (!(rho < 1.0)) {
        std::ostringstream msg;
        msg << "series sum_k k^k/k! y^k diverges: e y = " << rho << " >= 1 (need y < 1/e = " << 1.0 / kE << ")";
        throw DivergenceError(msg.str(), kInf, kInf);
    }
    if (y == 0.0) return k0 == 0 ? 1.0 : 0.0;
    numeric::CompensatedSum s;
    for (long k = k0; k < 100'000'000L; ++k) {
        const double t = std::exp(moser_series_log_term(static_cast<int>(k), y));
        s.add(t);
        // Successive term ratios increase to e y, so the tail is below t rho / (1 - rho).
        if (k > k0 && t * rho / (1.0 - rho) <= 1e-12 * s.value()) return s.value();
    }
    throw AccuracyError("series sum_k k^k/k! y^k did not reach relative 1e-12", s.value(), kInf);
}

ConstantBundle constants(const ConstantInputs& in) {
    const double p = in.p, Q = in.Q, beta = in.beta;
    if (!(p > 1.0)) throw InvalidArgument("constants need p > 1");
    if (!(beta >= 0.0 && beta < Q)) throw InvalidArgument("constants need 0 <= beta < Q");
    if (!(in.C1_tilde > 0.0)) throw InvalidArgument("constants need a positive C1_tilde");
    if (!(in.alpha >= 0.0)) throw InvalidArgument("constants need alpha >= 0");
    if (!(in.radius > 0.0)) throw InvalidArgument("constants need a positive ball radius");
    ConstantBundle b;
    b.in = in;
    b.mu = in.mu > 0.0 ? in.mu : 2.0 * Q / (Q - beta);
    const double mu = b.mu;
    if (!(mu > Q / (Q - beta))) throw InvalidArgument("constants need mu > Q / (Q - beta)");
    const double pp = p / (p - 1.0);
    const double mup = mu / (mu - 1.0);
    const double c1p = std::pow(in.C1_tilde, pp);
    const int k0 = first_retained_index(p);

    b.C2 = 1.0 / (kE * c1p * mu * pp);
    b.radius_C2_tilde = 1.0 / (kE * pp * c1p);
    if (!(in.alpha < b.radius_C2_tilde)) {
        std::ostringstream msg;
        msg << "alpha = " << in.alpha << " is at or above the radius (e p' C1~^{p'})^{-1} = " << b.radius_C2_tilde;
        throw DivergenceError(msg.str(), kInf, kInf);
    }
    if (!(in.alpha < b.C2)) {
        std::ostringstream msg;
        msg << "alpha = " << in.alpha << " is at or above the radius (e C1~^{p'} mu p')^{-1} = " << b.C2;
        throw DivergenceError(msg.str(), kInf, kInf);
    }
    b.C2_tilde = moser_series(pp * c1p * in.alpha, k0);

    numeric::CompensatedSum c3t;
    for (int k = 0; k < k0; ++k) {
        const double kp = k * pp;
        const double powk = kp == 0.0 ? 1.0 : std::pow(kp, kp - k / (p - 1.0));  // 0^0 = 1
        c3t.add(std::pow(in.alpha, k) / std::tgamma(k + 1.0) * std::pow(in.C1_tilde, kp) * powk);
    }
    c3t.add(b.C2_tilde);
    b.C3_tilde = c3t.value();

    const double base = Q - beta * mup;
    const double local1 = b.C3_tilde * std::pow(in.radius, -beta);
    const double local2 = std::pow(b.C3_tilde, 1.0 / mu) * std::pow(in.sphere, 1.0 / mup) *
                          std::pow(in.C0 * (2.0 * in.C0 + 1.0), Q / mup - beta) / std::pow(base, 1.0 / mup) *
                          std::pow(in.radius, Q / mup - beta);
    b.C1 = std::max(local1, local2);

    const double S3 = moser_series(in.alpha * c1p * pp * mu, k0);
    b.C3 = std::max(std::pow(in.sphere, 1.0 / mup) / std::pow(base, 1.0 / mup) * S3, b.C2_tilde);
    return b;
}

std::vector<ConstantEntry> ConstantBundle::entries() const {
    return {
        {"C1_tilde", in.C1_tilde, "empirical family sup of the critical Gagliardo-Nirenberg ratio"},
        {"C2_tilde", C2_tilde, "sum_{k>=p-1} k^k/k! (p' C1~^{p'} alpha)^k"},
        {"C3_tilde", C3_tilde, "sum_{0<=k<p-1} alpha^k/k! C1~^{kp'} (kp')^{kp'-k/(p-1)} + C2~"},
        {"C1", C1,
         "max(C3~ r^{-beta}, C3~^{1/mu} |S|^{1/mu'} (C0(2C0+1))^{Q/mu'-beta} (Q-beta mu')^{-1/mu'} r^{Q/mu'-beta})"},
        {"C2", C2, "(e C1~^{p'} mu p')^{-1}"},
        {"C3", C3, "max(|S|^{1/mu'} (Q-beta mu')^{-1/mu'} sum_{k>=p-1} alpha^k/k! (C1~^{p'} k p' mu)^k, C2~)"},
        {"radius_C2_tilde", radius_C2_tilde, "(e p' C1~^{p'})^{-1}"},
        {"mu", mu, "mu (default 2Q/(Q-beta))"},
    };
}

MoserConstant alpha_Q(const QuasiNorm& norm, int cells) {
    const auto& g = norm.group();
    if (!g.is_stratified()) throw UnsupportedOperation("alpha_Q needs a stratified group (R^n with unit weights or H^n)");
    const int n = g.dim();
    const double Q = g.homogeneous_dim();
    const double m = norm.smooth_power();
    constexpr double k = 8.0;
    const double Rmax = std::pow(100.0, 1.0 / m);
    const Fn N = [&norm](const Point& x) { return norm(x); };
    const Fn h = [&](const Point& x) {
        const double r = norm(x);
        if (r == 0.0) return 0.0;
        const double grad = euclidean_length(horizontal_gradient(N, g, x));
        return std::pow(grad, Q) * std::pow(r, k) * std::exp(-std::pow(r, m));
    };
    double integral = 0.0;
    if (n <= 3) {
        if (cells <= 0) cells = n <= 2 ? 48 : 24;
        using GL = numeric::GaussLegendre8;
        std::vector<std::vector<double>> xs(static_cast<std::size_t>(n)), ws(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double W = 1.25 * std::pow(Rmax, g.weights()[static_cast<std::size_t>(i)]);
            const double cw = 2.0 * W / cells;
            for (int c = 0; c < cells; ++c) {
                const double mid = -W + (c + 0.5) * cw;
                for (std::size_t j = 0; j < GL::nodes.size(); ++j) {
                    xs[static_cast<std::size_t>(i)].push_back(mid + 0.5 * cw * GL::nodes[j]);
                    ws[static_cast<std::size_t>(i)].push_back(0.5 * cw * GL::weights[j]);
                }
            }
        }
        const std::size_t n0 = xs[0].size();
        std::vector<double> slice(n0, 0.0);
        auto work = [&](std::size_t i0) {
            numeric::CompensatedSum s;
            Point x(static_cast<std::size_t>(n));
            x[0] = xs[0][i0];
            if (n == 1) {
                s.add(ws[0][i0] * h(x));
            } else {
                for (std::size_t i1 = 0; i1 < xs[1].size(); ++i1) {
                    x[1] = xs[1][i1];
                    if (n == 2) {
                        s.add(ws[0][i0] * ws[1][i1] * h(x));
                        continue;
                    }
                    for (std::size_t i2 = 0; i2 < xs[2].size(); ++i2) {
                        x[2] = xs[2][i2];
                        s.add(ws[0][i0] * ws[1][i1] * ws[2][i2] * h(x));
                    }
                }
            }
            slice[i0] = s.value();
        };
        const unsigned T = std::max(1u, std::min(16u, std::thread::hardware_concurrency()));
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < T; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i0 = t; i0 < n0; i0 += T) work(i0);
            });
        for (auto& th : pool) th.join();
        numeric::CompensatedSum total;
        for (double v : slice) total.add(v);
        integral = total.value();
    } else {
        IntegrandInfo info;
        info.decay_radius = Rmax;
        IntegrationOptions o;
        o.method = Method::MonteCarlo;
        o.budget = 4'000'000;
        integral = integrate(h, Domain::whole(), norm, info, o).value;
    }
    MoserConstant mc;
    mc.Q = Q;
    mc.c_Q = integral * m / std::tgamma((Q + k) / m);
    mc.alpha_Q = Q * std::pow(mc.c_Q, 1.0 / (Q - 1.0));
    return mc;
}

double alpha_Q_htype(int k, int l) {
    if (k <= 0 || l < 0) throw InvalidArgument("H-type dimensions need k > 0 and l >= 0");
    const double Q = k + 2.0 * l;
    const double c = 2.0 * std::pow(kPi, 0.5 * (k + l)) * std::tgamma(0.5 * (Q - l)) /
                     (std::pow(4.0, l) * std::tgamma(0.5 * k) * std::tgamma(0.5 * Q));
    return Q * std::pow(c, 1.0 / (Q - 1.0));
}

double alpha_Q_yang(int n) {
    if (n <= 0) throw InvalidArgument("Heisenberg dimension must be positive");
    const double Q = 2.0 * n + 2.0;
    const double omega = 2.0 * std::pow(kPi, n) / std::tgamma(n);
    const double sigma = std::tgamma(0.5) * std::tgamma(n + 0.5) * omega / std::tgamma(n + 1.0);
    return Q * std::pow(sigma, 1.0 / (Q - 1.0));
}

double alpha_beta(double aQ, double beta, double Q) {
    if (!(beta >= 0.0 && beta < Q)) throw InvalidArgument("alpha_beta needs 0 <= beta < Q");
    return aQ * (1.0 - beta / Q);
}

double crit_gn_ratio(const TrialFunction& f, const QuasiNorm& norm, double p, double q, int M) {
    require_unit_abelian(norm, "the critical Gagliardo-Nirenberg ratio");
    if (!(p > 1.0 && q >= p)) throw InvalidArgument("critical Gagliardo-Nirenberg ratio needs 1 < p <= q");
    const double Q = norm.group().homogeneous_dim();
    const double Fq = lp_whole(f, q, norm);
    const double Fp = lp_whole(f, p, norm);
    const double S = q == p ? 1.0 : homogeneous_sobolev_norm(f, Q / p, p, norm.group().dim(), M);
    const double den = std::pow(q, 1.0 - 1.0 / p) * std::pow(S, 1.0 - p / q) * std::pow(Fp, p / q);
    if (!(den > 1e-14)) throw DegenerateInput("critical Gagliardo-Nirenberg denominator vanishes for " + f.label());
    return Fq / den;
}

double critical_hardy_ratio(const TrialFunction& f, const QuasiNorm& norm, double p, double q, double beta,
                            double radius, TMNormalization denominator, int M, const Point& center) {
    const double Q = norm.group().homogeneous_dim();
    if (!(p > 1.0 && q >= p)) throw InvalidArgument("critical Hardy ratio needs 1 < p <= q");
    if (!(beta >= 0.0 && beta < Q)) throw InvalidArgument("critical Hardy ratio needs 0 <= beta < Q");
    if (!(radius > 0.0)) throw InvalidArgument("critical Hardy ratio needs a positive radius");
    if (at_identity(center) && std::isfinite(f.support_radius) && f.support_radius > radius * (1.0 + 1e-12))
        throw PreconditionViolation("trial function " + f.label() + " is not supported in the ball");
    const double num = ball_weighted_lq(f, norm, q, beta, radius, center);
    const double den = denominator == TMNormalization::GradH
                           ? grad_h_norm(f, norm, p)
                           : local_sobolev_norm(f, norm, Q / p, p, radius, center, M);
    const double d = std::pow(q, 1.0 - 1.0 / p) * den;
    if (!(d > 1e-14)) throw DegenerateInput("critical Hardy denominator vanishes for " + f.label());
    return num / d;
}

double weighted_gn_ratio(const TrialFunction& f, const QuasiNorm& norm, double p, double q, double beta, double mu,
                         int M) {
    require_unit_abelian(norm, "the weighted Gagliardo-Nirenberg ratio");
    const double Q = norm.group().homogeneous_dim();
    if (!(p > 1.0 && q >= p)) throw InvalidArgument("weighted Gagliardo-Nirenberg ratio needs 1 < p <= q");
    if (!(beta >= 0.0 && beta < Q)) throw InvalidArgument("weighted Gagliardo-Nirenberg ratio needs 0 <= beta < Q");
    if (!(mu > Q / (Q - beta))) throw InvalidArgument("weighted Gagliardo-Nirenberg ratio needs mu > Q / (Q - beta)");
    const double lhs = weighted_lp(f, -beta / q, q, norm).value;
    const double S = homogeneous_sobolev_norm(f, Q / p, p, norm.group().dim(), M);
    const double F = lp_whole(f, p, norm);
    const double rhs = std::pow(q, 1.0 - 1.0 / p) * (std::pow(S, 1.0 - p / q) * std::pow(F, p / q) +
                                                       std::pow(S, 1.0 - p / (q * mu)) * std::pow(F, p / (q * mu)));
    if (!(rhs > 1e-14)) throw DegenerateInput("weighted Gagliardo-Nirenberg denominator vanishes for " + f.label());
    return lhs / rhs;
}

GammaTable gamma_asymptotic_check(double p, const std::vector<double>& q_list) {
    if (!(p > 1.0)) throw InvalidArgument("Gamma check needs p > 1");
    const double pp = p / (p - 1.0);
    GammaTable t;
    t.p = p;
    for (double q : q_list) {
        if (!(q >= p)) throw InvalidArgument("Gamma check needs q >= p");
        const double lg = std::lgamma(q / pp + 2.0) / q - std::log(q / (kE * pp)) / pp;
        t.rows.push_back({q, std::exp(lg)});
    }
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (!(t.rows[i].ratio > 1.0)) t.above_one = false;
        if (i > 0 && !(t.rows[i].ratio < t.rows[i - 1].ratio)) t.decreasing = false;
    }
    return t;
}

std::string direction_name(EquivalenceDirection d) {
    return d == EquivalenceDirection::TmToHardy ? "tm->hardy" : "hardy->tm";
}

EquivalenceDirection parse_direction(const std::string& s) {
    if (s == "tm->hardy" || s == "tm-hardy") return EquivalenceDirection::TmToHardy;
    if (s == "hardy->tm" || s == "hardy-tm") return EquivalenceDirection::HardyToTm;
    throw InvalidArgument("unknown equivalence direction '" + s + "'");
}

EquivalenceReport equivalence_probe(const EquivalenceOptions& opt) {
    const TMSpec& base = opt.tm;
    base.validate();
    const auto fam = make_family(opt.family, base.norm.group(), base.norm);
    const auto box = opt.box.empty() ? fam.box : opt.box;
    const double pp = base.p_prime();

    EquivalenceReport rep;
    rep.direction = opt.direction;

    auto chain_points = opt.chain_points;
    if (chain_points.empty()) {
        std::vector<double> c;
        for (const auto& b : box) c.push_back(0.5 * (b.lo + b.hi));
        chain_points.push_back(c);
    }
    rep.min_slack = kInf;
    for (const auto& th : chain_points) {
        const auto f = tm_normalize(base, fam(th));
        auto chk = term_vs_sum(base, f, 6);
        for (const auto& t : chk) {
            rep.min_slack = std::min(rep.min_slack, t.slack);
            if (t.slack < -1e-10 * std::max(1.0, t.functional)) rep.chain_holds = false;
        }
        rep.chain.push_back(std::move(chk));
    }

    const Point center = base.center;
    rep.scan = q_scan(
        [&](double q, const std::vector<double>& th) {
            return critical_hardy_ratio(fam(th), base.norm, base.p, q, base.beta, base.radius, base.normalization,
                                        base.spectral_M, center);
        },
        opt.q_grid, box, opt.budget, opt.seed);
    rep.B_hat = rep.scan.tail;

    auto family_sup = [&](double alpha) {
        TMSpec s = base;
        s.alpha = alpha;
        OptimizationTask task;
        task.box = box;
        task.budget = opt.budget;
        task.seed = opt.seed;
        task.objective = [&](const std::vector<double>& th) {
            try {
                return tm_functional(s, tm_normalize(s, fam(th))).functional.value;
            } catch (const RangeError&) {
                return kInf;
            }
        };
        return maximize(task).value;
    };
    rep.alpha_hat = alpha_bisect([&](double a) { return family_sup(a) <= opt.cap; }, 0.0, opt.alpha_hi);
    rep.product = rep.alpha_hat.alpha * pp * kE * std::pow(rep.B_hat, pp);
    if (opt.direction == EquivalenceDirection::HardyToTm)
        rep.predicted = 1.0 / (pp * kE * std::pow(rep.B_hat, pp));
    else
        rep.predicted = std::pow(1.0 / (rep.alpha_hat.alpha * pp * kE), 1.0 / pp);
    return rep;
}

}  // namespace hypoineq
