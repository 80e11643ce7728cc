#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "hypoineq/group.hpp"
#include "hypoineq/numeric.hpp"

namespace hypoineq {

using Fn = std::function<double(const Point&)>;
using Radial = std::function<double(double)>;

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Method { Auto, Grid, Polar, MonteCarlo };
std::string method_name(Method m);

struct IntegralEstimate {
    double value = 0.0;
    double abs_error = 0.0;
    Method method = Method::Grid;
    std::size_t nodes = 0;
    bool divergent = false;
};

/// Integration region. Balls are B(center, r) = {y : |center^{-1} y| < r};
/// annuli are centred at the identity.
struct Domain {
    enum class Kind { Whole, Ball, Annulus, Box };
    Kind kind = Kind::Whole;
    Point center;
    double r_in = 0.0;
    double r_out = kInf;
    std::vector<double> half_widths;

    static Domain whole() { return {}; }
    static Domain ball(double radius, Point center = {});
    static Domain annulus(double r_in, double r_out);
    static Domain box(std::vector<double> half_widths);
};

/// What the caller knows about an integrand. Whole-group integrals on the
/// grid and Monte Carlo paths need a finite support or decay radius.
struct IntegrandInfo {
    double support_radius = kInf;
    double decay_radius = kInf;
    std::vector<double> radial_breakpoints;
    /// f(x) = radial_profile(|x|) when set; enables the one-dimensional path.
    Radial radial_profile;
};

struct IntegrationOptions {
    numeric::Tolerance tol{1e-12, 1e-8};
    std::size_t budget = 20'000'000;
    Method method = Method::Auto;
    std::uint64_t seed = 12345;
};

IntegralEstimate integrate(const Fn& f, const Domain& domain, const QuasiNorm& norm, const IntegrandInfo& info = {},
                           const IntegrationOptions& opt = {});

/// (int |f|^p)^{1/p}; p = inf gives the maximum over the quadrature nodes.
IntegralEstimate lp_norm(const Fn& f, double p, const Domain& domain, const QuasiNorm& norm,
                         const IntegrandInfo& info = {}, const IntegrationOptions& opt = {});

/// |sphere| int_{r_in}^{r_out} g(r) r^{Q-1} dr. A non-integrable endpoint is
/// reported with divergent = true and an infinite value.
IntegralEstimate radial_integral(const Radial& g, double r_in, double r_out, const QuasiNorm& norm,
                                 const std::vector<double>& breakpoints = {}, numeric::Tolerance tol = {1e-14, 1e-10});

/// Fixed node set with weights; used where several integrals must share
/// exactly the same discretisation.
struct QuadratureRule {
    std::vector<Point> nodes;
    std::vector<double> weights;
    std::vector<double> radii;  // |node|
    double apply(const Fn& f) const;
    double apply_radial(const Radial& g) const;
    std::size_t size() const { return nodes.size(); }
};

struct RuleOptions {
    int radial_cells = 48;        // geometric cells between r_min and the outer radius
    int sub_cells = 2;            // Gauss-Legendre cells per geometric cell
    int angular = 64;             // angular resolution (abelian Euclidean)
    int grid_cells = 12;          // per axis on the tensor path
    double r_min_ratio = 1e-12;   // innermost radius / outer radius
};

/// Rule for int_{B(0,r)} or int_{annulus}. Euclidean norms on R^1..R^3 get a
/// polar rule graded towards the origin and refined at the breakpoints;
/// other norms get a tensor Gauss-Legendre rule on the bounding box with
/// the indicator folded into the weights.
QuadratureRule make_rule(const Domain& domain, const QuasiNorm& norm, const std::vector<double>& radial_breakpoints = {},
                         const RuleOptions& opt = {});

/// int_{|x| <= R} f over centred balls for a radial f; avg / tail Hardy operators.
double hardy_average(const Radial& f, double radius, const QuasiNorm& norm, const std::vector<double>& breakpoints = {});
double hardy_tail(const Radial& f, double radius, const QuasiNorm& norm, const std::vector<double>& breakpoints = {});

struct MinkowskiGrid {
    double upper = kInf;                  // functions vanish beyond this point
    std::vector<double> breakpoints;      // jump locations
};

struct MinkowskiReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = true;
};

/// int_0^inf f1(x) (int_0^x f2)^theta dx  <=  ( int_0^inf f2(z) (int_z^inf f1)^{1/theta} dz )^theta.
MinkowskiReport minkowski_check(const Radial& f1, const Radial& f2, double theta, const MinkowskiGrid& grid);

}  // namespace hypoineq
