#include "hypoineq/hardy_weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hypoineq/errors.hpp"

namespace hypoineq {

double PowerLogWeight::operator()(double r) const {
    double v = c * std::pow(r, alpha);
    if (gamma != 0.0) v *= std::pow(std::log(std::numbers::e + 1.0 / r), gamma);
    return v;
}

std::string PowerLogWeight::describe() const {
    std::ostringstream out;
    out << c << "*|x|^" << alpha;
    if (gamma != 0.0) out << "*log(e+1/|x|)^" << gamma;
    return out.str();
}

WeightPair WeightPair::radial_pair(Radial phi, Radial psi, const QuasiNorm& norm, std::string label,
                                   std::vector<double> breakpoints) {
    WeightPair w;
    w.phi_r = std::move(phi);
    w.psi_r = std::move(psi);
    w.phi = [norm, f = w.phi_r](const Point& x) { return f(norm(x)); };
    w.psi = [norm, f = w.psi_r](const Point& x) { return f(norm(x)); };
    w.label = std::move(label);
    w.breakpoints = std::move(breakpoints);
    return w;
}

WeightPair WeightPair::power_log(const PowerLogWeight& phi, const PowerLogWeight& psi, const QuasiNorm& norm) {
    return radial_pair(phi, psi, norm, "phi=" + phi.describe() + ", psi=" + psi.describe());
}

WeightPair WeightPair::scaled_phi(double lambda) const {
    WeightPair w = *this;
    w.phi = [f = phi, lambda](const Point& x) { return lambda * f(x); };
    if (phi_r) w.phi_r = [f = phi_r, lambda](double r) { return lambda * f(r); };
    return w;
}

double HardyParams::envelope_factor() const { return std::pow(p_prime(), 1.0 / p_prime()) * std::pow(p, 1.0 / q); }

std::string weight_kind_name(WeightKind k) {
    switch (k) {
        case WeightKind::A1: return "A1";
        case WeightKind::A2: return "A2";
        case WeightKind::A3: return "A3";
        case WeightKind::A4: return "A4";
        case WeightKind::A5: return "A5";
    }
    return "?";
}

WeightKind parse_weight_kind(const std::string& s) {
    for (auto k : {WeightKind::A1, WeightKind::A2, WeightKind::A3, WeightKind::A4, WeightKind::A5})
        if (weight_kind_name(k) == s) return k;
    throw InvalidArgument("unknown weight condition '" + s + "'");
}

std::vector<double> RGrid::values() const {
    std::vector<double> v;
    for (int i = 0; i < points; ++i)
        v.push_back(lo * std::pow(hi / lo, points == 1 ? 0.0 : static_cast<double>(i) / (points - 1)));
    return v;
}

RGrid RGrid::extended() const {
    const double decades = std::log10(hi / lo);
    const int per_decade = static_cast<int>(std::lround((points - 1) / std::max(decades, 1e-12)));
    return {lo / 10.0, hi * 10.0, points + 2 * per_decade};
}

namespace {

constexpr numeric::Tolerance kInner{0.0, 1e-11};

// |sphere| int_a^b g(r) r^{Q-1} dr, infinite when divergent.
double rint(const Radial& g, double a, double b, const QuasiNorm& norm, const std::vector<double>& bps) {
    const auto e = radial_integral(g, a, b, norm, bps, kInner);
    return e.divergent ? kInf : e.value;
}

// Ball / exterior integral of a possibly non-radial weight.
double wint(const Fn& f, const Radial& fr, bool inner, double R, const QuasiNorm& norm, const std::vector<double>& bps) {
    if (fr) return inner ? rint(fr, 0.0, R, norm, bps) : rint(fr, R, kInf, norm, bps);
    const Domain d = inner ? Domain::ball(R) : Domain::annulus(R, kInf);
    try {
        return integrate(f, d, norm).value;
    } catch (const DivergenceError&) {
        return kInf;
    }
}

void check_order(WeightKind kind, const HardyParams& prm) {
    if (!(prm.p > 1.0 && prm.q > 1.0)) throw InvalidArgument("Hardy exponents must exceed 1");
    const bool needs_le = kind == WeightKind::A1 || kind == WeightKind::A2 || kind == WeightKind::A5;
    if (needs_le && !(prm.p <= prm.q))
        throw InvalidArgument(weight_kind_name(kind) + " requires p <= q");
    if (!needs_le && !(prm.q < prm.p)) throw InvalidArgument(weight_kind_name(kind) + " requires q < p");
}

double product(double a, double ea, double b, double eb) {
    if (a == 0.0 || b == 0.0) return (std::isinf(a) || std::isinf(b)) ? kInf : 0.0;
    if (std::isinf(a) || std::isinf(b)) return kInf;
    return std::pow(a, ea) * std::pow(b, eb);
}

std::vector<double> merged(std::vector<double> a, const std::vector<double>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

double derivative(const Radial& f, double r) {
    const double h = 1e-6 * (1.0 + r);
    const double lo = std::max(0.0, r - h);
    return (f(r + h) - f(lo)) / (r + h - lo);
}

}  // namespace

double weight_section(WeightKind kind, const WeightPair& w, const HardyParams& prm, const QuasiNorm& norm, double R) {
    check_order(kind, prm);
    const double pp = prm.p_prime();
    const Radial dual_r = w.psi_r ? Radial([f = w.psi_r, pp](double r) { return std::pow(f(r), 1.0 - pp); }) : Radial{};
    const Fn dual = [f = w.psi, pp](const Point& x) { return std::pow(f(x), 1.0 - pp); };
    switch (kind) {
        case WeightKind::A1:
            return product(wint(w.phi, w.phi_r, false, R, norm, w.breakpoints), 1.0 / prm.q,
                           wint(dual, dual_r, true, R, norm, w.breakpoints), 1.0 / pp);
        case WeightKind::A2:
            return product(wint(w.phi, w.phi_r, true, R, norm, w.breakpoints), 1.0 / prm.q,
                           wint(dual, dual_r, false, R, norm, w.breakpoints), 1.0 / pp);
        case WeightKind::A5: {
            if (!w.radial()) throw UnsupportedOperation("A5 is computed for radial weights only");
            const double S = norm.sphere_measure().value;
            const double Q = norm.group().homogeneous_dim();
            double inner;
            try {
                inner = numeric::integrate_positive_axis(
                            [&](double r) { return std::pow(S * std::pow(r, Q - 1.0) * w.psi_r(r), 1.0 - pp); }, 0.0,
                            R, w.breakpoints, kInner)
                            .value;
            } catch (const DivergenceError&) {
                inner = kInf;
            }
            return product(rint(w.phi_r, R, kInf, norm, w.breakpoints), 1.0 / prm.q, inner, 1.0 / pp);
        }
        default: throw InvalidArgument("sections exist for A1, A2 and A5 only");
    }
}

WeightConditionResult weight_condition(WeightKind kind, const WeightPair& w, const HardyParams& prm,
                                       const QuasiNorm& norm, const RGrid& grid) {
    check_order(kind, prm);
    WeightConditionResult out;
    out.kind = kind;

    if (kind == WeightKind::A3 || kind == WeightKind::A4) {
        if (!w.radial()) throw UnsupportedOperation("A3/A4 are computed for radial weights only");
        const double pp = prm.p_prime();
        const double d = prm.delta();
        const double qp = prm.q_prime();
        const bool inner_phi = kind == WeightKind::A4;
        const Radial dual = [f = w.psi_r, pp](double r) { return std::pow(f(r), 1.0 - pp); };
        const Radial integrand = [&](double r) {
            const double ph = inner_phi ? rint(w.phi_r, 0.0, r, norm, w.breakpoints)
                                        : rint(w.phi_r, r, kInf, norm, w.breakpoints);
            const double ps = inner_phi ? rint(dual, r, kInf, norm, w.breakpoints)
                                        : rint(dual, 0.0, r, norm, w.breakpoints);
            const double v = product(ph, d / prm.q, ps, d / qp);
            if (std::isinf(v)) throw DivergenceError("inner integral of the weight condition diverges", kInf, kInf);
            return v * dual(r);
        };
        try {
            const auto e = radial_integral(integrand, 0.0, kInf, norm, w.breakpoints, {0.0, 1e-7});
            out.value = e.divergent ? kInf : e.value;
        } catch (const DivergenceError&) {
            out.value = kInf;
        }
        out.extended_value = out.value;
        out.finite = std::isfinite(out.value);
        return out;
    }

    auto scan = [&](const RGrid& g, std::vector<double>* Rs, std::vector<double>* secs, double* argmax) {
        double best = 0.0;
        for (double R : g.values()) {
            const double s = weight_section(kind, w, prm, norm, R);
            if (Rs) Rs->push_back(R);
            if (secs) secs->push_back(s);
            if (s > best || std::isinf(s)) {
                best = s;
                if (argmax) *argmax = R;
            }
            if (std::isinf(s)) break;
        }
        return best;
    };
    out.value = scan(grid, &out.R, &out.sections, &out.argmax_R);
    if (std::isinf(out.value)) {
        out.extended_value = kInf;
        out.finite = false;
        return out;
    }
    out.extended_value = scan(grid.extended(), nullptr, nullptr, nullptr);
    out.finite = std::isfinite(out.extended_value) && out.extended_value <= out.value * 1.01;
    return out;
}

double hardy_operator(HardyOperator kind, const TrialFunction& f, const Point& x, const QuasiNorm& norm) {
    const double r = norm(x);
    if (f.profile) {
        try {
            return kind == HardyOperator::Average ? hardy_average(f.profile, r, norm, f.breakpoints)
                                                  : hardy_tail(f.profile, r, norm, f.breakpoints);
        } catch (const DivergenceError& e) {
            throw AccuracyError(e.what(), kInf, kInf);
        }
    }
    if (kind == HardyOperator::Average) {
        if (r == 0.0) return 0.0;
        return integrate(f.eval, Domain::ball(r), norm, f.info()).value;
    }
    if (r >= f.support_radius) return 0.0;
    return integrate(f.eval, Domain::annulus(r, kInf), norm, f.info()).value;
}

HardyRatio hardy_ratio(HardyOperator kind, const WeightPair& w, const HardyParams& prm, const QuasiNorm& norm,
                       const TrialFunction& f) {
    if (!f.profile || !w.radial()) throw UnsupportedOperation("Hardy ratios are evaluated for radial data only");
    for (double r : {1e-6, 1e-3, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0})
        if (f.profile(r) < 0.0) throw InvalidArgument("Hardy ratio needs f >= 0");
    const auto bps = merged(f.breakpoints, w.breakpoints);
    const auto& fp = f.profile;
    HardyRatio out;
    const Radial H = [&](double r) {
        return kind == HardyOperator::Average ? rint(fp, 0.0, r, norm, bps) : rint(fp, r, kInf, norm, bps);
    };
    const double lhs_q = rint(
        [&](double r) {
            const double ph = w.phi_r(r);
            if (ph == 0.0) return 0.0;
            const double h = H(r);
            return h == 0.0 ? 0.0 : ph * std::pow(h, prm.q);
        },
        0.0, kInf, norm, bps);
    const double rhs_p = rint(
        [&](double r) {
            const double v = fp(r);
            return v == 0.0 ? 0.0 : std::pow(v, prm.p) * w.psi_r(r);
        },
        0.0, kInf, norm, bps);
    out.lhs = std::pow(lhs_q, 1.0 / prm.q);
    out.rhs = std::pow(rhs_p, 1.0 / prm.p);
    if (out.rhs == 0.0) {
        out.skipped = true;
        out.note = out.lhs == 0.0 ? "0/0 skipped" : "zero right-hand side";
        return out;
    }
    out.ratio = out.lhs / out.rhs;
    return out;
}

TrialFunction quasi_extremal(WeightKind kind, const WeightPair& w, const HardyParams& prm, const QuasiNorm& norm,
                             double R) {
    if (!w.radial()) throw UnsupportedOperation("quasi-extremals are built for radial weights only");
    const double pp = prm.p_prime();
    const bool inner = kind == WeightKind::A1;
    TrialFunction f;
    f.family = "quasi-extremal";
    f.params = {{"R", R}};
    f.profile = [psi = w.psi_r, pp, R, inner](double r) {
        const bool in = inner ? (r > 0.0 && r < R) : (r > R);
        return in ? std::pow(psi(r), 1.0 - pp) : 0.0;
    };
    f.eval = [norm, prof = f.profile](const Point& x) { return prof(norm(x)); };
    f.breakpoints = merged({R}, w.breakpoints);
    if (inner) f.support_radius = R;
    f.smoothness = Smoothness::Piecewise;
    return f;
}

SandwichReport sandwich_check(WeightKind kind, const WeightPair& w, const HardyParams& prm, const QuasiNorm& norm,
                              const std::vector<TrialFunction>& members, const std::vector<double>& quasi_R,
                              double upper_tol, double lower_tol) {
    if (kind != WeightKind::A1 && kind != WeightKind::A2) throw InvalidArgument("sandwich check covers A1 and A2");
    const auto cond = weight_condition(kind, w, prm, norm);
    if (!cond.finite) throw PreconditionViolation("weight condition " + weight_kind_name(kind) + " is not finite");
    const HardyOperator op = kind == WeightKind::A1 ? HardyOperator::Average : HardyOperator::Tail;
    SandwichReport rep;
    rep.kind = kind;
    rep.A = std::max(cond.value, cond.extended_value);
    rep.envelope = prm.envelope_factor() * rep.A;
    for (const auto& f : members) {
        auto r = hardy_ratio(op, w, prm, norm, f);
        rep.labels.push_back(f.label());
        if (!r.skipped) {
            rep.max_ratio = std::max(rep.max_ratio, r.ratio);
            if (r.ratio > rep.envelope * (1.0 + upper_tol)) rep.upper_ok = false;
        }
        rep.ratios.push_back(std::move(r));
    }
    for (double R : quasi_R) {
        const auto f = quasi_extremal(kind, w, prm, norm, R);
        const auto r = hardy_ratio(op, w, prm, norm, f);
        const double section = weight_section(kind, w, prm, norm, R);
        rep.quasi.push_back({R, r.ratio, section});
        if (r.skipped || r.ratio < (1.0 - lower_tol) * section) rep.lower_ok = false;
        if (!r.skipped && r.ratio > rep.envelope * (1.0 + upper_tol)) rep.upper_ok = false;
    }
    return rep;
}

RadialHardyReport radial_hardy_check(const WeightPair& w, const HardyParams& prm, const QuasiNorm& norm,
                                     const TrialFunction& f, double tol) {
    if (!f.profile || !w.radial()) throw UnsupportedOperation("radial Hardy check needs radial data");
    if (std::abs(f.profile(0.0)) > 1e-14) throw PreconditionViolation("radial Hardy check needs f(identity) = 0");
    const auto cond = weight_condition(WeightKind::A5, w, prm, norm);
    if (!cond.finite) throw PreconditionViolation("A5 is not finite for this weight pair");
    const auto bps = merged(f.breakpoints, w.breakpoints);
    RadialHardyReport rep;
    rep.A5 = std::max(cond.value, cond.extended_value);
    rep.constant = prm.envelope_factor() * rep.A5;
    const double lhs_q = rint(
        [&](double r) {
            const double v = f.profile(r);
            return v == 0.0 ? 0.0 : w.phi_r(r) * std::pow(std::abs(v), prm.q);
        },
        0.0, kInf, norm, bps);
    const double rhs_p = rint(
        [&](double r) {
            const double d = derivative(f.profile, r);
            return d == 0.0 ? 0.0 : w.psi_r(r) * std::pow(std::abs(d), prm.p);
        },
        0.0, kInf, norm, bps);
    rep.lhs = std::pow(lhs_q, 1.0 / prm.q);
    rep.rhs = std::pow(rhs_p, 1.0 / prm.p);
    rep.holds = rep.lhs <= rep.constant * rep.rhs * (1.0 + tol);
    return rep;
}

}  // namespace hypoineq
