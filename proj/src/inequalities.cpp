#include "hypoineq/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include "hypoineq/errors.hpp"
#include "hypoineq/kernels.hpp"
#include "hypoineq/periodic.hpp"

namespace hypoineq {

namespace {

constexpr double kBalanceTol = 1e-9;
constexpr double kDegenerate = 1e-14;
constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

struct Checker {
    std::vector<std::string>& out;
    void require(bool ok, const std::string& name) {
        if (!ok) out.push_back(name);
    }
};

bool balanced(double lhs, double rhs) { return std::abs(lhs - rhs) <= kBalanceTol * std::max(1.0, std::abs(rhs)); }

bool unit_abelian(const HomogeneousGroup& g) {
    return g.kind() == HomogeneousGroup::Kind::Abelian && g.is_stratified();
}

void require_spectral(const QuasiNorm& norm) {
    if (!unit_abelian(norm.group()))
        throw UnsupportedOperation("fractional powers of the sub-Laplacian are computed on R^n only");
}

// Radius outside which f is negligible.
double reach(const TrialFunction& f) {
    const double R = std::min(f.support_radius, f.decay_radius);
    if (std::isinf(R)) throw PreconditionViolation("trial function " + f.label() + " has no support or decay radius");
    return R;
}

IntegralEstimate power_of(const IntegralEstimate& e, double t) {
    IntegralEstimate out = e;
    if (e.value <= 0.0) {
        out.value = 0.0;
        out.abs_error = 0.0;
        return out;
    }
    out.value = std::pow(e.value, t);
    out.abs_error = std::abs(t) * out.value * e.abs_error / e.value;
    return out;
}

IntegralEstimate product(const IntegralEstimate& a, const IntegralEstimate& b) {
    IntegralEstimate out = a;
    out.value = a.value * b.value;
    out.abs_error = std::abs(a.value) * b.abs_error + std::abs(b.value) * a.abs_error;
    out.nodes = a.nodes + b.nodes;
    return out;
}

// Uniform points of the quasi-ball {|x| < R} with density proportional to |x|^{-kappa}.
class PowerBallSampler {
public:
    PowerBallSampler(const QuasiNorm& norm, std::uint64_t seed) : norm_(norm), rng_(seed) {}

    Point next(double R, double kappa) {
        const double Q = norm_.group().homogeneous_dim();
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Point w(static_cast<std::size_t>(norm_.group().dim()));
        double nw = 0.0;
        do {
            for (double& v : w) v = u(rng_);
            nw = norm_(w);
        } while (!(nw < 1.0 && nw > 0.0));
        // The direction of a uniform ball point follows the sphere measure.
        const double rho = R * std::pow(unit_(rng_), 1.0 / (Q - kappa));
        return norm_.group().dilate(rho / nw, w);
    }

    /// 1 / density at |x| = r, without the |x|^{kappa} factor.
    double inverse_density(double R, double kappa) const {
        const double Q = norm_.group().homogeneous_dim();
        return norm_.sphere_measure().value * std::pow(R, Q - kappa) / (Q - kappa);
    }

private:
    QuasiNorm norm_;
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

double triangle_bound(const QuasiNorm& norm, std::uint64_t seed) {
    if (norm.is_norm()) return 1.0;
    PointSampler s(norm.group(), seed, 7);
    return 1.05 * triangle_constant(norm, s, 20000).C0;
}

// int int f(x) g(y) |x|^{-alpha} |y^{-1}x|^{-lambda} |y|^{-beta} dx dy by
// sampling x ~ |x|^{-alpha} on the reach of f and z = y^{-1}x ~ |z|^{-lambda}.
IntegralEstimate bilinear_mc(const TrialFunction& f, const TrialFunction& g, double alpha, double beta, double lambda,
                             const QuasiNorm& norm, std::size_t pairs, std::uint64_t seed) {
    const auto& grp = norm.group();
    const double Rx = reach(f);
    const double Rz = triangle_bound(norm, seed) * (Rx + reach(g));
    PowerBallSampler sampler(norm, seed);
    const double scale = sampler.inverse_density(Rx, alpha) * sampler.inverse_density(Rz, lambda);
    double mean = 0.0, m2 = 0.0;
    for (std::size_t k = 0; k < pairs; ++k) {
        const Point x = sampler.next(Rx, alpha);
        const Point z = sampler.next(Rz, lambda);
        const Point y = grp.law(x, grp.inverse(z));
        double v = f(x);
        if (v != 0.0) {
            v *= g(y);
            if (v != 0.0 && beta != 0.0) v *= std::pow(norm(y), -beta);
        }
        const double d = v - mean;
        mean += d / static_cast<double>(k + 1);
        m2 += d * (v - mean);
    }
    const double var = pairs > 1 ? m2 / static_cast<double>(pairs - 1) : 0.0;
    IntegralEstimate e;
    e.value = scale * mean;
    e.abs_error = scale * 2.58 * std::sqrt(var / static_cast<double>(pairs));
    e.method = Method::MonteCarlo;
    e.nodes = pairs;
    return e;
}

// Radial table of a kernel profile, cubic in (log r, log K), with power-law
// extrapolation towards the origin and zero beyond the last node.
class KernelTable {
public:
    KernelTable(const Radial& k, double near_exponent, double r_lo, double r_hi, int per_decade)
        : near_exponent_(near_exponent) {
        const int count = static_cast<int>(std::ceil(std::log10(r_hi / r_lo) * per_decade)) + 1;
        s0_ = std::log(r_lo);
        ds_ = std::log(10.0) / per_decade;
        for (int i = 0; i < count; ++i) {
            const double v = k(std::exp(s0_ + i * ds_));
            if (!(v > 0.0)) break;
            logk_.push_back(std::log(v));
        }
        if (logk_.size() < 4) throw InvalidArgument("kernel table needs a positive kernel on the grid");
    }

    double operator()(double r) const {
        if (!(r > 0.0)) return kInf;
        const double s = (std::log(r) - s0_) / ds_;
        if (s < 0.0) return std::exp(logk_[0] + near_exponent_ * s * ds_);
        const auto last = static_cast<double>(logk_.size() - 1);
        if (s >= last) return s == last ? std::exp(logk_.back()) : 0.0;
        const auto i = static_cast<std::size_t>(s);
        const double t = s - static_cast<double>(i);
        const std::size_t n = logk_.size();
        const double y0 = logk_[i == 0 ? 0 : i - 1], y1 = logk_[i], y2 = logk_[i + 1];
        const double y3 = logk_[i + 2 < n ? i + 2 : n - 1];
        const double m1 = i == 0 ? y2 - y1 : 0.5 * (y2 - y0);
        const double m2 = i + 2 < n ? 0.5 * (y3 - y1) : y2 - y1;
        const double t2 = t * t, t3 = t2 * t;
        const double y = (2 * t3 - 3 * t2 + 1) * y1 + (t3 - 2 * t2 + t) * m1 + (-2 * t3 + 3 * t2) * y2 + (t3 - t2) * m2;
        return std::exp(y);
    }

private:
    double near_exponent_;
    double s0_ = 0.0;
    double ds_ = 0.0;
    std::vector<double> logk_;
};

struct Kernel {
    Fn eval;
    Radial radial;  // profile in the Euclidean length or the quasi-norm, see `euclidean`
    bool euclidean = false;
    std::vector<double> breakpoints;
};

Kernel make_kernel(KernelChoice choice, double a, const QuasiNorm& norm) {
    const double Q = norm.group().homogeneous_dim();
    Kernel k;
    switch (choice) {
        case KernelChoice::Riesz: {
            const HeatOperator op(norm.group());
            k.radial = [op, a](double r) { return riesz_kernel(op, a, r); };
            k.euclidean = true;
            break;
        }
        case KernelChoice::Bessel: {
            const HeatOperator op(norm.group());
            const auto table = std::make_shared<KernelTable>([op, a](double r) { return bessel_kernel(op, a, r); },
                                                             a - Q, 1e-6, 1e3, 64);
            k.radial = [table](double r) { return (*table)(r); };
            k.euclidean = true;
            break;
        }
        case KernelChoice::Power:
            k.radial = [a, Q](double r) { return std::pow(r, a - Q); };
            break;
        case KernelChoice::TruncatedPower:
            k.radial = [a, Q](double r) { return r < 1.0 ? std::pow(r, a - Q) : std::pow(r, -Q); };
            k.breakpoints = {1.0};
            break;
        case KernelChoice::Default: throw InvalidArgument("kernel choice must be resolved before use");
    }
    const Radial prof = k.radial;
    if (k.euclidean)
        k.eval = [prof](const Point& x) { return prof(euclidean_length(x)); };
    else
        k.eval = [prof, norm](const Point& x) { return prof(norm(x)); };
    return k;
}

KernelChoice resolve_kernel(const InequalitySpec& spec) {
    if (spec.kernel != KernelChoice::Default) return spec.kernel;
    const bool spectral = unit_abelian(spec.norm.group());
    if (spec.theorem == TheoremId::LogHardy) return spectral ? KernelChoice::Bessel : KernelChoice::TruncatedPower;
    return spectral ? KernelChoice::Riesz : KernelChoice::Power;
}

// Integral of T(|r e - rho w|) over the unit sphere of R^n, n <= 3.
double sphere_average(const Radial& T, int n, double r, double rho) {
    constexpr numeric::Tolerance kTol{0.0, 1e-9};
    const double lo = std::abs(r - rho), hi = r + rho;
    if (r == 0.0 || rho == 0.0) return (n == 1 ? 2.0 : n == 2 ? 2.0 * kPi : 4.0 * kPi) * T(hi);
    switch (n) {
        case 1: return T(lo) + T(hi);
        case 2: {
            const auto g = [&](double th) {
                const double sn = std::sin(0.5 * th);
                return T(std::sqrt(lo * lo + 4.0 * r * rho * sn * sn));
            };
            return 2.0 * numeric::integrate_positive_axis(g, 0.0, kPi, {}, kTol).value;
        }
        default: {
            const auto g = [&](double s) { return T(s) * s; };
            return 2.0 * kPi / (r * rho) * numeric::integrate_positive_axis(g, lo, hi, {}, kTol).value;
        }
    }
}

// (f * T)(r e) for radial f and T on R^n, n <= 3, as a double radial integral.
double radial_convolution(const TrialFunction& f, const Radial& T, int n, double r, double Rf) {
    const auto g = [&](double rho) {
        const double v = f.profile(rho);
        if (v == 0.0) return 0.0;
        return v * std::pow(rho, n - 1) * sphere_average(T, n, r, rho);
    };
    std::vector<double> bps = f.breakpoints;
    if (r > 0.0) bps.push_back(r);
    return numeric::integrate_positive_axis(g, 0.0, Rf, bps, {0.0, 1e-8}).value;
}

// ( int |f * T|^q w(|x|) dx )^{1/q} for the integral Hardy inequalities.
// head(eps) is int_0^eps w(r) r^{Q-1} dr, used where f * T is replaced by
// its value at the origin.
IntegralEstimate convolution_norm(const TrialFunction& f, const Kernel& T, const Radial& weight,
                                  const Radial& head_moment, double q, const QuasiNorm& norm, std::uint64_t seed) {
    const auto& grp = norm.group();
    const double Q = grp.homogeneous_dim();
    const int n = grp.dim();
    const double Rf = reach(f);
    const double mass = weighted_lp(f, 0.0, 1.0, norm).value;
    const double r_far = 1e3 * Rf;
    // Beyond r_far, f * T is mass T(x) to relative order Rf / r_far.
    const auto tail = radial_integral([&](double r) { return std::pow(mass * T.radial(r), q) * weight(r); }, r_far, kInf,
                                      norm, T.breakpoints, {0.0, 1e-8});
    if (tail.divergent) throw DivergenceError("convolution norm diverges at infinity", 0.0, kInf);

    const bool radial_path = f.is_radial() && norm.kind() == QuasiNorm::Kind::Euclidean && unit_abelian(grp) && n <= 3;
    if (radial_path) {
        std::map<double, double> memo;
        const auto u = [&](double r) {
            const auto it = memo.find(r);
            if (it != memo.end()) return it->second;
            const double v = radial_convolution(f, T.radial, n, r, Rf);
            memo.emplace(r, v);
            return v;
        };
        const double eps = 1e-3 * Rf;
        const double head = norm.sphere_measure().value * std::pow(std::abs(u(0.0)), q) * head_moment(eps);
        std::vector<double> bps = f.breakpoints;
        bps.push_back(Rf);
        const auto body = radial_integral([&](double r) { return std::pow(std::abs(u(r)), q) * weight(r); }, eps, r_far,
                                          norm, bps, {0.0, 1e-6});
        IntegralEstimate total = body;
        total.value += head + tail.value;
        // The frozen head and the far-field model are first order in eps and Rf / r_far.
        total.abs_error += 1e-3 * head + tail.abs_error + std::abs(tail.value) * Rf / r_far;
        total.nodes = memo.size();
        return power_of(total, 1.0 / q);
    }

    // General groups: common random numbers in z = y^{-1} x make the inner
    // integral a fixed rule, and the outer integral uses a quadrature rule
    // on B(0, 4 Rf) plus the far-field model beyond.
    const double R_out = 4.0 * Rf;
    const double a_near = [&] {
        // sample z with the singularity of T: |z|^{a-Q} for small |z|
        const double r1 = 1e-6, r2 = 2e-6;
        return Q + std::log(T.radial(r2) / T.radial(r1)) / std::log(r2 / r1);
    }();
    const double kappa = std::clamp(Q - a_near, 0.0, Q - 1e-6);
    const double Rz = triangle_bound(norm, seed) * (R_out + Rf);
    PowerBallSampler sampler(norm, seed);
    constexpr std::size_t kInner = 4096;
    std::vector<Point> zs;
    std::vector<double> wz;
    const double inv = sampler.inverse_density(Rz, kappa) / static_cast<double>(kInner);
    for (std::size_t k = 0; k < kInner; ++k) {
        Point z = sampler.next(Rz, kappa);
        const double nz = norm(z);
        wz.push_back(T.eval(z) * std::pow(nz, kappa) * inv);
        zs.push_back(std::move(z));
    }
    RuleOptions ro;
    ro.radial_cells = 16;
    ro.sub_cells = 1;
    ro.angular = 16;
    ro.grid_cells = 2;
    const auto rule = make_rule(Domain::ball(R_out), norm, f.breakpoints, ro);
    numeric::CompensatedSum body;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const Point& x = rule.nodes[i];
        numeric::CompensatedSum u;
        for (std::size_t k = 0; k < kInner; ++k) u.add(f(grp.law(x, grp.inverse(zs[k]))) * wz[k]);
        body.add(rule.weights[i] * std::pow(std::abs(u.value()), q) * weight(rule.radii[i]));
    }
    const auto mid = radial_integral([&](double r) { return std::pow(mass * T.radial(r), q) * weight(r); }, R_out, r_far,
                                     norm, T.breakpoints, {0.0, 1e-8});
    IntegralEstimate total;
    total.value = body.value() + mid.value + tail.value;
    // Monte Carlo inner sums: a relative error of order kInner^{-1/2} per node.
    total.abs_error = q * body.value() * 2.58 / std::sqrt(static_cast<double>(kInner)) + mid.abs_error +
                      mid.value * Rf / R_out + tail.abs_error;
    total.method = Method::MonteCarlo;
    total.nodes = rule.size() * kInner;
    return power_of(total, 1.0 / q);
}

RatioReport finish(const InequalitySpec& spec, IntegralEstimate lhs, IntegralEstimate rhs, const TrialFunction& f) {
    if (!(rhs.value >= kDegenerate))
        throw DegenerateInput("right-hand side " + std::to_string(rhs.value) + " is below 1e-14 for " + f.label());
    RatioReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.ratio = lhs.value / rhs.value;
    r.ratio_error = r.ratio * (lhs.abs_error / std::max(std::abs(lhs.value), kDegenerate) + rhs.abs_error / rhs.value);
    r.f_label = f.label();
    r.spec = spec.describe();
    return r;
}

IntegralEstimate sobolev_factor(const TrialFunction& f, double a, double p, const InequalitySpec& spec) {
    if (a == 0.0) return weighted_lp(f, 0.0, p, spec.norm);
    require_spectral(spec.norm);
    IntegralEstimate e;
    e.value = homogeneous_sobolev_norm(f, a, p, spec.norm.group().dim(), spec.spectral_M);
    e.method = Method::Grid;
    e.nodes = static_cast<std::size_t>(std::pow(spec.spectral_M, spec.norm.group().dim()));
    return e;
}

}  // namespace

std::string theorem_name(TheoremId t) {
    switch (t) {
        case TheoremId::IntHardy: return "int-hardy";
        case TheoremId::LogHardy: return "log-hardy";
        case TheoremId::Hls: return "hls";
        case TheoremId::HlsGraded: return "hls-graded";
        case TheoremId::HardySobolev: return "hardy-sobolev";
        case TheoremId::Ckn: return "ckn";
        case TheoremId::Uncertainty: return "uncertainty";
    }
    return "unknown";
}

TheoremId parse_theorem(const std::string& s) {
    for (auto t : {TheoremId::IntHardy, TheoremId::LogHardy, TheoremId::Hls, TheoremId::HlsGraded,
                   TheoremId::HardySobolev, TheoremId::Ckn, TheoremId::Uncertainty})
        if (theorem_name(t) == s) return t;
    throw InvalidArgument("unknown theorem id '" + s + "'");
}

std::string kernel_name(KernelChoice k) {
    switch (k) {
        case KernelChoice::Default: return "default";
        case KernelChoice::Riesz: return "riesz";
        case KernelChoice::Bessel: return "bessel";
        case KernelChoice::Power: return "power";
        case KernelChoice::TruncatedPower: return "truncated-power";
    }
    return "unknown";
}

KernelChoice parse_kernel(const std::string& s) {
    for (auto k : {KernelChoice::Default, KernelChoice::Riesz, KernelChoice::Bessel, KernelChoice::Power,
                   KernelChoice::TruncatedPower})
        if (kernel_name(k) == s) return k;
    throw InvalidArgument("unknown kernel '" + s + "'");
}

double InequalitySpec::get(const std::string& name) const {
    const auto it = params.find(name);
    if (it == params.end()) throw InvalidArgument(theorem_name(theorem) + " needs parameter '" + name + "'");
    return it->second;
}

std::string InequalitySpec::describe() const {
    std::ostringstream out;
    out << theorem_name(theorem) << "[";
    bool first = true;
    for (const auto& [k, v] : params) {
        out << (first ? "" : ",") << k << "=" << v;
        first = false;
    }
    out << "] on " << norm.id();
    if (kernel != KernelChoice::Default) out << " kernel=" << kernel_name(kernel);
    return out.str();
}

double RatioReport::extra(const std::string& name) const {
    for (const auto& [k, v] : extras)
        if (k == name) return v;
    throw InvalidArgument("ratio report has no entry " + name);
}

Admissibility admissible(const InequalitySpec& spec) {
    Admissibility out;
    Checker c{out.violations};
    const double Q = spec.norm.group().homogeneous_dim();
    switch (spec.theorem) {
        case TheoremId::IntHardy:
        case TheoremId::HardySobolev:
        case TheoremId::Uncertainty: {
            const double p = spec.get("p"), q = spec.get("q"), a = spec.get("a"), b = spec.get("b");
            c.require(p > 1.0, "1 < p");
            c.require(p <= q, "p <= q");
            c.require(std::isfinite(q), "q < inf");
            c.require(a > 0.0, "0 < a");
            c.require(a < Q / p, "a < Q/p");
            c.require(b >= 0.0, "0 <= b");
            c.require(b < Q, "b < Q");
            c.require(balanced(a / Q, 1.0 / p - 1.0 / q + b / (q * Q)), "a/Q = 1/p - 1/q + b/(qQ)");
            break;
        }
        case TheoremId::LogHardy: {
            const double p = spec.get("p"), q = spec.get("q"), r = spec.get("r");
            const double pp = p / (p - 1.0);
            c.require(p > 1.0, "1 < p");
            c.require(p < r, "p < r");
            c.require(std::isfinite(r), "r < inf");
            c.require(p < q, "p < q");
            c.require(q < (r - 1.0) * pp, "q < (r-1)p'");
            break;
        }
        case TheoremId::Hls: {
            const double p = spec.get("p"), q = spec.get("q"), lam = spec.get("lambda"), al = spec.get("alpha");
            const double pp = p / (p - 1.0);
            c.require(lam > 0.0, "0 < lambda");
            c.require(lam < Q, "lambda < Q");
            c.require(p > 1.0 && std::isfinite(p), "1 < p < inf");
            c.require(q > 1.0 && std::isfinite(q), "1 < q < inf");
            c.require(al >= 0.0, "0 <= alpha");
            c.require(al < Q / pp, "alpha < Q/p'");
            c.require(al + lam <= Q, "alpha + lambda <= Q");
            c.require(balanced(1.0 / p + 1.0 / q + (al + lam) / Q, 2.0), "1/p + 1/q + (alpha+lambda)/Q = 2");
            break;
        }
        case TheoremId::HlsGraded: {
            const double p = spec.get("p"), q = spec.get("q"), a = spec.get("a"), b = spec.get("b");
            const double lam = spec.get("lambda"), al = spec.get("alpha"), be = spec.get("beta");
            const double pp = p / (p - 1.0);
            c.require(p > 1.0 && std::isfinite(p), "1 < p < inf");
            c.require(q > 1.0 && std::isfinite(q), "1 < q < inf");
            c.require(a >= 0.0, "0 <= a");
            c.require(a < Q / p, "a < Q/p");
            c.require(b >= 0.0, "0 <= b");
            c.require(b < Q / q, "b < Q/q");
            c.require(lam > 0.0, "0 < lambda");
            c.require(lam < Q, "lambda < Q");
            c.require(al >= 0.0, "0 <= alpha");
            c.require(al < a + Q / pp, "alpha < a + Q/p'");
            c.require(be >= 0.0, "0 <= beta");
            c.require(be <= b, "beta <= b");
            c.require(al + lam <= Q, "alpha + lambda <= Q");
            c.require(balanced((Q - a * p) / (p * Q) + (Q - q * (b - be)) / (q * Q) + (al + lam) / Q, 2.0),
                      "(Q-ap)/(pQ) + (Q-q(b-beta))/(qQ) + (alpha+lambda)/Q = 2");
            break;
        }
        case TheoremId::Ckn: {
            const double p = spec.get("p"), q = spec.get("q"), r = spec.get("r"), a = spec.get("a");
            const double be = spec.get("beta"), ga = spec.get("gamma"), de = spec.get("delta");
            c.require(p > 1.0 && std::isfinite(p), "1 < p < inf");
            c.require(q > 1.0 && std::isfinite(q), "1 < q < inf");
            c.require(de > 0.0 && de <= 1.0, "0 < delta <= 1");
            c.require(r > 0.0 && std::isfinite(r), "0 < r < inf");
            if (de != 1.0) c.require(r <= q / (1.0 - de), "r <= q/(1-delta)");
            c.require(a > 0.0, "0 < a");
            c.require(a < Q / p, "a < Q/p");
            c.require(de * r * (Q - a * p - be * p) <= p * (Q + r * ga - r * be) + kBalanceTol,
                      "delta r (Q - ap - beta p) <= p (Q + r gamma - r beta)");
            c.require(ga >= be * (1.0 - de) - de * a - kBalanceTol, "beta(1-delta) - delta a <= gamma");
            c.require(ga <= be * (1.0 - de) + kBalanceTol, "gamma <= beta(1-delta)");
            c.require(balanced(r * (de * Q + p * (be * (1.0 - de) - ga - a * de)) / (p * Q) + (1.0 - de) * r / q, 1.0),
                      "r(delta Q + p(beta(1-delta) - gamma - a delta))/(pQ) + (1-delta) r/q = 1");
            // Classical parameters: no weight on the gradient, b = beta, c = gamma.
            out.classical_ckn = (1.0 / q + be / Q > 0.0) && (1.0 / r + ga / Q > 0.0);
            break;
        }
    }
    out.ok = out.violations.empty();
    return out;
}

double homogeneous_sobolev_norm(const TrialFunction& f, double a, double p, int n, int M) {
    const auto grid = GridFunction::sample(f, box_for(f, n, M));
    check_guard(grid);
    if (a == 0.0) return grid.lp_norm(p);
    return frac_laplacian(grid, 0.5 * a).lp_norm(p);
}

IntegralEstimate weighted_lp(const TrialFunction& f, double gamma, double q, const QuasiNorm& norm) {
    if (!(q > 0.0) || !std::isfinite(q)) throw InvalidArgument("weighted L^q norm needs 0 < q < inf");
    IntegralEstimate e;
    if (f.is_radial()) {
        const Radial prof = f.profile;
        const double rmax = std::isfinite(f.support_radius) ? f.support_radius : kInf;
        e = radial_integral(
            [&](double r) {
                const double v = std::abs(prof(r));
                if (v == 0.0 || r == 0.0) return 0.0;
                return std::pow(v, q) * std::pow(r, gamma * q);
            },
            0.0, rmax, norm, f.breakpoints);
    } else {
        IntegrandInfo info;
        info.support_radius = f.support_radius;
        info.decay_radius = f.decay_radius;
        info.radial_breakpoints = f.breakpoints;
        e = integrate(
            [&](const Point& x) {
                const double v = std::abs(f(x));
                const double r = norm(x);
                if (v == 0.0 || r == 0.0) return 0.0;
                return std::pow(v, q) * std::pow(r, gamma * q);
            },
            Domain::whole(), norm, info);
    }
    if (e.divergent) throw DivergenceError("weighted norm of " + f.label() + " diverges", 0.0, kInf);
    return power_of(e, 1.0 / q);
}

RatioReport ratio(const InequalitySpec& spec, const TrialFunction& f) { return ratio(spec, f, f); }

RatioReport ratio(const InequalitySpec& spec, const TrialFunction& f, const TrialFunction& g) {
    const auto adm = admissible(spec);
    if (!adm.ok) {
        std::string msg = spec.describe() + " is not admissible:";
        for (const auto& v : adm.violations) msg += " [" + v + "]";
        throw PreconditionViolation(msg);
    }
    const double Q = spec.norm.group().homogeneous_dim();
    switch (spec.theorem) {
        case TheoremId::IntHardy: {
            const double p = spec.get("p"), q = spec.get("q"), a = spec.get("a"), b = spec.get("b");
            const auto T = make_kernel(resolve_kernel(spec), a, spec.norm);
            const auto w = [b](double r) { return std::pow(r, -b); };
            const auto head = [b, Q](double eps) { return std::pow(eps, Q - b) / (Q - b); };
            const auto lhs = convolution_norm(f, T, w, head, q, spec.norm, spec.seed);
            return finish(spec, lhs, weighted_lp(f, 0.0, p, spec.norm), f);
        }
        case TheoremId::LogHardy: {
            const double p = spec.get("p"), q = spec.get("q"), r = spec.get("r");
            const auto T = make_kernel(resolve_kernel(spec), Q / p, spec.norm);
            const auto w = [r, Q](double x) { return std::pow(std::log(kE + 1.0 / x), -r) / std::pow(x, Q); };
            // With t = log(e + 1/x): int_0^eps x^{-1} t^{-r} dx = int_{t_eps}^inf t^{-r} (1 + 1/(e^{t-1} - 1)) dt.
            const auto head = [r](double eps) {
                const double t0 = std::log(kE + 1.0 / eps);
                const double rest = numeric::integrate_positive_axis(
                    [&](double t) { return std::pow(t, -r) / std::expm1(t - 1.0); }, t0, kInf, {}, {0.0, 1e-10}).value;
                return std::pow(t0, 1.0 - r) / (r - 1.0) + rest;
            };
            const auto lhs = convolution_norm(f, T, w, head, q, spec.norm, spec.seed);
            return finish(spec, lhs, weighted_lp(f, 0.0, p, spec.norm), f);
        }
        case TheoremId::Hls: {
            const double p = spec.get("p"), q = spec.get("q");
            auto lhs = bilinear_mc(f, g, spec.get("alpha"), 0.0, spec.get("lambda"), spec.norm, spec.mc_pairs, spec.seed);
            lhs.value = std::abs(lhs.value);
            auto rep = finish(spec, lhs, product(weighted_lp(f, 0.0, p, spec.norm), weighted_lp(g, 0.0, q, spec.norm)), f);
            rep.g_label = g.label();
            return rep;
        }
        case TheoremId::HlsGraded: {
            const double p = spec.get("p"), q = spec.get("q");
            auto lhs = bilinear_mc(f, g, spec.get("alpha"), spec.get("beta"), spec.get("lambda"), spec.norm,
                                   spec.mc_pairs, spec.seed);
            lhs.value = std::abs(lhs.value);
            const auto sf = sobolev_factor(f, spec.get("a"), p, spec);
            const auto sg = sobolev_factor(g, spec.get("b"), q, spec);
            auto rep = finish(spec, lhs, product(sf, sg), f);
            rep.g_label = g.label();
            rep.extras = {{"f_norm", sf.value}, {"g_norm", sg.value}};
            return rep;
        }
        case TheoremId::HardySobolev: {
            const double p = spec.get("p"), q = spec.get("q"), a = spec.get("a"), b = spec.get("b");
            const auto lhs = weighted_lp(f, -b / q, q, spec.norm);
            return finish(spec, lhs, sobolev_factor(f, a, p, spec), f);
        }
        case TheoremId::Ckn: {
            const double p = spec.get("p"), q = spec.get("q"), r = spec.get("r"), a = spec.get("a");
            const double be = spec.get("beta"), ga = spec.get("gamma"), de = spec.get("delta");
            const auto lhs = weighted_lp(f, ga, r, spec.norm);
            const auto s = sobolev_factor(f, a, p, spec);
            IntegralEstimate rhs = power_of(s, de);
            double wnorm = 1.0;
            if (de != 1.0) {
                const auto w = weighted_lp(f, be, q, spec.norm);
                wnorm = w.value;
                rhs = product(rhs, power_of(w, 1.0 - de));
            }
            auto rep = finish(spec, lhs, rhs, f);
            rep.extras = {{"sobolev_norm", s.value}, {"weighted_norm", wnorm}};
            return rep;
        }
        case TheoremId::Uncertainty: {
            const double p = spec.get("p"), q = spec.get("q"), a = spec.get("a"), b = spec.get("b");
            const double qp = q / (q - 1.0);
            const auto s = sobolev_factor(f, a, p, spec);
            const auto w = weighted_lp(f, b / q, qp, spec.norm);
            const auto h = weighted_lp(f, -b / q, q, spec.norm);
            const auto l2 = power_of(weighted_lp(f, 0.0, 2.0, spec.norm), 2.0);
            auto rep = finish(spec, l2, product(s, w), f);
            rep.extras = {{"sobolev_norm", s.value},
                          {"weighted_norm", w.value},
                          {"hardy_norm", h.value},
                          {"holder_product", h.value * w.value},
                          {"l2_squared", l2.value},
                          {"holder_defect", h.value * w.value - l2.value}};
            return rep;
        }
    }
    throw InvalidArgument("unhandled theorem");
}

ReversedHlsTable reversed_hls_demo(const QuasiNorm& norm, double lambda, const std::vector<double>& R_list) {
    const double Q = norm.group().homogeneous_dim();
    if (!(lambda > 0.0)) throw InvalidArgument("reversed HLS demo needs lambda > 0");
    ReversedHlsTable t;
    t.lambda = lambda;
    t.p = Q / (Q + lambda);
    const double sphere = norm.sphere_measure().value;
    const auto family = make_family("reversed-hls", norm.group(), norm);
    std::vector<double> radii = R_list;
    std::sort(radii.begin(), radii.end());
    for (double R : radii) {
        if (!(R > 1.0)) throw InvalidArgument("reversed HLS demo needs R > 1");
        const auto f = family({lambda, R});
        const auto num = radial_integral([&](double r) { return std::pow(r, lambda) * f.profile(r); }, 1.0, R, norm,
                                         f.breakpoints);
        const auto den = radial_integral([&](double r) { return std::pow(f.profile(r), t.p); }, 1.0, R, norm,
                                         f.breakpoints);
        ReversedHlsRow row;
        row.R = R;
        row.numeric = 2.0 * num.value / std::pow(den.value, 1.0 / t.p);
        row.closed_form = 2.0 * std::pow(sphere * std::log(R), -lambda / Q);
        row.rel_diff = std::abs(row.numeric - row.closed_form) / row.closed_form;
        t.agree = t.agree && row.rel_diff <= 0.05;
        if (!t.rows.empty() && !(row.numeric < t.rows.back().numeric)) t.decreasing = false;
        t.rows.push_back(row);
    }
    return t;
}

}  // namespace hypoineq
