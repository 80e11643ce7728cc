#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hypoineq/group.hpp"
#include "hypoineq/quadrature.hpp"

namespace hypoineq {

enum class Smoothness { Bump, Lipschitz, Piecewise };
std::string smoothness_name(Smoothness s);

/// An evaluable test function with support metadata. When `profile` is set
/// the function equals profile(|x|) for the attached norm.
struct TrialFunction {
    std::string family;
    std::vector<std::pair<std::string, double>> params;
    Fn eval;
    Radial profile;
    double support_radius = kInf;
    double decay_radius = kInf;
    Smoothness smoothness = Smoothness::Bump;
    std::vector<double> breakpoints;

    double operator()(const Point& x) const { return eval(x); }
    bool is_radial() const { return static_cast<bool>(profile); }
    IntegrandInfo info() const;
    std::string label() const;
    double param(const std::string& name) const;

    TrialFunction scaled(double c) const;
    /// x -> f(dilate(lambda, x)); support radii shrink by 1/lambda.
    TrialFunction dilated(const HomogeneousGroup& g, double lambda) const;
};

struct ParamBound {
    std::string name;
    double lo;
    double hi;
};

struct Family {
    std::string name;
    std::vector<ParamBound> box;
    std::function<TrialFunction(const std::vector<double>&)> generator;

    TrialFunction operator()(const std::vector<double>& theta) const;
    std::vector<double> center() const;
};

/// Registered families:
///   gaussian(s)                 exp(-|x|_E^2 / (2 s^2))
///   bump(rho)                   exp(-1 / (1 - |x|_E^2 / rho^2)) on |x|_E < rho
///   power-cutoff(R, alpha, p)   (|x|^alpha)^{1-p'} on |x| < R  (quasi-extremal for psi = |x|^alpha)
///   reversed-hls(lambda, R)     |x|^{-(Q+lambda)} on 1 <= |x| <= R
///   moser-spike(delta)          min(1, log(1/|x|) / log(1/delta)) on |x| < 1
///   annulus-indicator(a, b)     indicator of a <= |x| < b
///   ramp(R)                     min(|x|, R)
/// |x|_E is the coordinate Euclidean length, |x| the attached quasi-norm.
Family make_family(const std::string& name, const HomogeneousGroup& group, const QuasiNorm& norm);
std::vector<std::string> family_names();

/// Central differences of f along the horizontal left-invariant fields,
/// f(x (+-h e_j)). Defined on H^n (length 2n) and on abelian groups with unit
/// weights (ordinary gradient). h <= 0 selects 1e-4 (1 + |x|_E).
std::vector<double> horizontal_gradient(const Fn& f, const HomogeneousGroup& g, const Point& x, double h = 0.0);

/// Length of the horizontal gradient; uses the radial derivative for radial
/// functions under a Euclidean norm.
double horizontal_gradient_norm(const TrialFunction& f, const QuasiNorm& norm, const Point& x);

struct NormSpec {
    enum class Kind { Lp, Sobolev, GradQ };
    Kind kind = Kind::Lp;
    double p = 2.0;
    double a = 0.0;  // Sobolev order
    static NormSpec lp(double p) { return {Kind::Lp, p, 0.0}; }
    static NormSpec sobolev(double a, double p) { return {Kind::Sobolev, p, a}; }
    static NormSpec grad_q() { return {Kind::GradQ, 0.0, 0.0}; }
};

/// Evaluates the norm selected by `spec` on f over `domain`.
double function_norm(const TrialFunction& f, const NormSpec& spec, const QuasiNorm& norm,
                     const Domain& domain = Domain::whole());

/// c f with function_norm(c f) = target.
TrialFunction normalize(const TrialFunction& f, const NormSpec& spec, const QuasiNorm& norm, double target = 1.0,
                        const Domain& domain = Domain::whole());

}  // namespace hypoineq
