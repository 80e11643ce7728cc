#include "hypoineq/trial_functions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hypoineq/errors.hpp"
#include "hypoineq/periodic.hpp"

namespace hypoineq {

std::string smoothness_name(Smoothness s) {
    switch (s) {
        case Smoothness::Bump: return "bump";
        case Smoothness::Lipschitz: return "lipschitz";
        case Smoothness::Piecewise: return "piecewise";
    }
    return "unknown";
}

IntegrandInfo TrialFunction::info() const {
    IntegrandInfo i;
    i.support_radius = support_radius;
    i.decay_radius = decay_radius;
    i.radial_breakpoints = breakpoints;
    i.radial_profile = profile;
    return i;
}

std::string TrialFunction::label() const {
    std::ostringstream out;
    out << family << "(";
    for (std::size_t i = 0; i < params.size(); ++i) out << (i ? "," : "") << params[i].first << "=" << params[i].second;
    out << ")";
    return out.str();
}

double TrialFunction::param(const std::string& name) const {
    for (const auto& [k, v] : params)
        if (k == name) return v;
    throw InvalidArgument("trial function " + family + " has no parameter " + name);
}

TrialFunction TrialFunction::scaled(double c) const {
    TrialFunction out = *this;
    const Fn e = eval;
    out.eval = [e, c](const Point& x) { return c * e(x); };
    if (profile) {
        const Radial pr = profile;
        out.profile = [pr, c](double r) { return c * pr(r); };
    }
    out.params.emplace_back("scale", c);
    return out;
}

TrialFunction TrialFunction::dilated(const HomogeneousGroup& g, double lambda) const {
    if (!(lambda > 0.0)) throw InvalidArgument("dilation factor must be positive");
    TrialFunction out = *this;
    const Fn e = eval;
    out.eval = [e, g, lambda](const Point& x) { return e(g.dilate(lambda, x)); };
    if (profile) {
        const Radial pr = profile;
        out.profile = [pr, lambda](double r) { return pr(lambda * r); };
    }
    out.support_radius = support_radius / lambda;
    out.decay_radius = decay_radius / lambda;
    for (double& b : out.breakpoints) b /= lambda;
    out.params.emplace_back("dilation", lambda);
    return out;
}

TrialFunction Family::operator()(const std::vector<double>& theta) const {
    if (theta.size() != box.size())
        throw InvalidArgument("family " + name + " expects " + std::to_string(box.size()) + " parameters");
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (!(theta[i] >= box[i].lo && theta[i] <= box[i].hi)) {
            std::ostringstream msg;
            msg << "parameter " << box[i].name << "=" << theta[i] << " outside [" << box[i].lo << ", " << box[i].hi
                << "] for family " << name;
            throw InvalidArgument(msg.str());
        }
    }
    return generator(theta);
}

std::vector<double> Family::center() const {
    std::vector<double> c;
    for (const auto& b : box) c.push_back(0.5 * (b.lo + b.hi));
    return c;
}

namespace {

// Quasi-norm radius of the coordinate Euclidean ball of radius rho.
double norm_radius_of_euclidean_ball(const QuasiNorm& norm, double rho) {
    switch (norm.kind()) {
        case QuasiNorm::Kind::Euclidean: return rho;
        case QuasiNorm::Kind::WeightedMax: {
            double m = 0.0;
            for (double w : norm.group().weights()) m = std::max(m, std::pow(rho, 1.0 / w));
            return m;
        }
        case QuasiNorm::Kind::Kaplan: return std::pow(std::pow(rho, 4) + rho * rho, 0.25);
    }
    return rho;
}

double sq_length(const Point& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

TrialFunction base(const std::string& family, std::vector<std::pair<std::string, double>> params) {
    TrialFunction f;
    f.family = family;
    f.params = std::move(params);
    return f;
}

}  // namespace

std::vector<std::string> family_names() {
    return {"gaussian", "bump", "power-cutoff", "reversed-hls", "moser-spike", "annulus-indicator", "ramp"};
}

Family make_family(const std::string& name, const HomogeneousGroup& group, const QuasiNorm& norm) {
    if (!(norm.group() == group)) throw InvalidArgument("norm is attached to a different group");
    const bool euclid = norm.kind() == QuasiNorm::Kind::Euclidean;
    const double Q = group.homogeneous_dim();
    Family fam;
    fam.name = name;

    if (name == "gaussian") {
        fam.box = {{"s", 0.05, 20.0}};
        fam.generator = [norm, euclid](const std::vector<double>& th) {
            const double s = th[0];
            const double c = 1.0 / (2.0 * s * s);
            auto f = base("gaussian", {{"s", s}});
            f.eval = [c](const Point& x) { return std::exp(-c * sq_length(x)); };
            if (euclid) f.profile = [c](double r) { return std::exp(-c * r * r); };
            f.decay_radius = norm_radius_of_euclidean_ball(norm, s * std::sqrt(80.0));
            f.smoothness = Smoothness::Bump;
            return f;
        };
    } else if (name == "bump") {
        fam.box = {{"rho", 0.05, 20.0}};
        fam.generator = [norm, euclid](const std::vector<double>& th) {
            const double rho2 = th[0] * th[0];
            auto f = base("bump", {{"rho", th[0]}});
            f.eval = [rho2](const Point& x) {
                const double u = sq_length(x) / rho2;
                return u < 1.0 ? std::exp(-1.0 / (1.0 - u)) : 0.0;
            };
            if (euclid)
                f.profile = [rho2](double r) {
                    const double u = r * r / rho2;
                    return u < 1.0 ? std::exp(-1.0 / (1.0 - u)) : 0.0;
                };
            f.support_radius = norm_radius_of_euclidean_ball(norm, th[0]);
            f.smoothness = Smoothness::Bump;
            return f;
        };
    } else if (name == "power-cutoff") {
        fam.box = {{"R", 1e-3, 1e3}, {"alpha", -5.0, 5.0}, {"p", 1.01, 10.0}};
        fam.generator = [norm](const std::vector<double>& th) {
            const double R = th[0];
            const double pp = th[2] / (th[2] - 1.0);
            const double e = th[1] * (1.0 - pp);
            auto f = base("power-cutoff", {{"R", R}, {"alpha", th[1]}, {"p", th[2]}});
            f.profile = [R, e](double r) { return (r > 0.0 && r < R) ? std::pow(r, e) : 0.0; };
            f.eval = [norm, prof = f.profile](const Point& x) { return prof(norm(x)); };
            f.support_radius = R;
            f.breakpoints = {R};
            f.smoothness = Smoothness::Piecewise;
            return f;
        };
    } else if (name == "reversed-hls") {
        fam.box = {{"lambda", 1e-3, Q - 1e-3}, {"R", 1.0 + 1e-9, 1e12}};
        fam.generator = [norm, Q](const std::vector<double>& th) {
            const double lam = th[0], R = th[1];
            auto f = base("reversed-hls", {{"lambda", lam}, {"R", R}});
            f.profile = [lam, R, Q](double r) { return (r >= 1.0 && r <= R) ? std::pow(r, -(Q + lam)) : 0.0; };
            f.eval = [norm, prof = f.profile](const Point& x) { return prof(norm(x)); };
            f.support_radius = R;
            f.breakpoints = {1.0, R};
            f.smoothness = Smoothness::Piecewise;
            return f;
        };
    } else if (name == "moser-spike") {
        fam.box = {{"delta", 1e-12, 0.99}};
        fam.generator = [norm](const std::vector<double>& th) {
            const double d = th[0];
            const double L = std::log(1.0 / d);
            auto f = base("moser-spike", {{"delta", d}});
            f.profile = [d, L](double r) {
                if (r <= d) return 1.0;
                if (r >= 1.0) return 0.0;
                return std::log(1.0 / r) / L;
            };
            f.eval = [norm, prof = f.profile](const Point& x) { return prof(norm(x)); };
            f.support_radius = 1.0;
            f.breakpoints = {d, 1.0};
            f.smoothness = Smoothness::Lipschitz;
            return f;
        };
    } else if (name == "annulus-indicator") {
        fam.box = {{"a", 0.0, 1e3}, {"b", 1e-6, 1e3}};
        fam.generator = [norm](const std::vector<double>& th) {
            const double a = th[0], b = th[1];
            if (!(b > a)) throw InvalidArgument("annulus-indicator needs a < b");
            auto f = base("annulus-indicator", {{"a", a}, {"b", b}});
            f.profile = [a, b](double r) { return (r >= a && r < b) ? 1.0 : 0.0; };
            f.eval = [norm, prof = f.profile](const Point& x) { return prof(norm(x)); };
            f.support_radius = b;
            f.breakpoints = {a, b};
            f.smoothness = Smoothness::Piecewise;
            return f;
        };
    } else if (name == "ramp") {
        fam.box = {{"R", 1e-3, 1e3}};
        fam.generator = [norm](const std::vector<double>& th) {
            const double R = th[0];
            auto f = base("ramp", {{"R", R}});
            f.profile = [R](double r) { return std::min(r, R); };
            f.eval = [norm, prof = f.profile](const Point& x) { return prof(norm(x)); };
            f.breakpoints = {R};
            f.smoothness = Smoothness::Lipschitz;
            return f;
        };
    } else {
        throw InvalidArgument("unknown trial family '" + name + "'");
    }
    return fam;
}

namespace {

// |g'(r)| by a central difference with a step relative to r.
double radial_slope(const Radial& g, double r) {
    const double h = r > 0.0 ? 1e-6 * r : 1e-12;
    const double lo = std::max(0.0, r - h);
    return std::abs((g(r + h) - g(lo)) / (r + h - lo));
}

}  // namespace

std::vector<double> horizontal_gradient(const Fn& f, const HomogeneousGroup& g, const Point& x, double h) {
    if (!g.is_stratified()) throw UnsupportedOperation("horizontal gradient needs H^n or R^n with unit weights");
    if (h <= 0.0) h = 1e-4 * (1.0 + euclidean_length(x));
    const int m = g.horizontal_dim();
    std::vector<double> grad(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        const double fp = f(g.law(x, g.horizontal_direction(j, h)));
        const double fm = f(g.law(x, g.horizontal_direction(j, -h)));
        grad[static_cast<std::size_t>(j)] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

double horizontal_gradient_norm(const TrialFunction& f, const QuasiNorm& norm, const Point& x) {
    if (f.profile && norm.kind() == QuasiNorm::Kind::Euclidean) {
        return radial_slope(f.profile, norm(x));
    }
    return euclidean_length(horizontal_gradient(f.eval, norm.group(), x));
}

double function_norm(const TrialFunction& f, const NormSpec& spec, const QuasiNorm& norm, const Domain& domain) {
    const auto& g = norm.group();
    switch (spec.kind) {
        case NormSpec::Kind::Lp: return lp_norm(f.eval, spec.p, domain, norm, f.info()).value;
        case NormSpec::Kind::Sobolev: {
            if (g.kind() != HomogeneousGroup::Kind::Abelian || !g.is_stratified())
                throw UnsupportedOperation("Sobolev norms are computed on R^n only");
            const int M = g.dim() <= 2 ? 256 : (g.dim() == 3 ? 128 : 32);
            return sobolev_norm(f, spec.a, spec.p, box_for(f, g.dim(), M));
        }
        case NormSpec::Kind::GradQ: {
            const double Q = g.homogeneous_dim();
            IntegrandInfo info;
            info.support_radius = f.support_radius;
            info.decay_radius = f.decay_radius;
            info.radial_breakpoints = f.breakpoints;
            if (f.profile && norm.kind() == QuasiNorm::Kind::Euclidean) {
                const Radial prof = f.profile;
                info.radial_profile = [prof, Q](double r) { return std::pow(radial_slope(prof, r), Q); };
            }
            const auto e = integrate(
                [&](const Point& x) { return std::pow(horizontal_gradient_norm(f, norm, x), Q); }, domain, norm, info);
            return std::pow(e.value, 1.0 / Q);
        }
    }
    return 0.0;
}

TrialFunction normalize(const TrialFunction& f, const NormSpec& spec, const QuasiNorm& norm, double target,
                        const Domain& domain) {
    const double v = function_norm(f, spec, norm, domain);
    if (!(v > 0.0)) throw InvalidArgument("cannot normalize a function with zero norm");
    return f.scaled(target / v);
}

}  // namespace hypoineq
