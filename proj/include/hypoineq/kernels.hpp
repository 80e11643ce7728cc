#pragma once

#include <vector>

#include "hypoineq/group.hpp"
#include "hypoineq/quadrature.hpp"

namespace hypoineq {

/// -Delta on R^n (degree 2) and its heat kernel (4 pi t)^{-n/2} exp(-|x|^2 / 4t).
class HeatOperator {
public:
    explicit HeatOperator(const HomogeneousGroup& g);
    int dim() const { return n_; }
    double degree() const { return 2.0; }
    double homogeneous_dim() const { return n_; }
    double operator()(double t, const Point& x) const;
    double radial(double t, double r) const;
    /// int h_t dx by the radial path.
    IntegralEstimate mass(double t) const;

private:
    int n_;
};

/// One-dimensional Gaussian convolution in closed form:
/// int h^1_t(x - y) h^1_s(y) dy.
double heat_convolution_closed_form_1d(double t, double s, double x);
/// The same convolution by adaptive quadrature.
double heat_convolution_numeric_1d(double t, double s, double x);

/// I_a(x) = Gamma(a/2)^{-1} int_0^inf t^{a/2-1} h_t(x) dt, computed with
/// t = |x|^2 u; requires 0 < a < n and x != 0.
double riesz_kernel(const HeatOperator& op, double a, double r);
double riesz_kernel(const HeatOperator& op, double a, const Point& x);
/// Gamma((n-a)/2) / (4^{a/2} pi^{n/2} Gamma(a/2)) |x|^{a-n}.
double riesz_closed_form(int n, double a, double r);

/// B_a(x) = Gamma(a/2)^{-1} int_0^inf t^{a/2-1} e^{-t} h_t(x) dt.
double bessel_kernel(const HeatOperator& op, double a, double r);
double bessel_kernel(const HeatOperator& op, double a, const Point& x);

struct KernelBound {
    double C = 0.0;
    double argmax_r = 0.0;
    std::vector<double> r;
    std::vector<double> ratio;
    bool bounded = true;
};

/// sup over `radii` of I_a(r) r^{Q-a}.
KernelBound riesz_bound(const HeatOperator& op, double a, const std::vector<double>& radii);

enum class BesselRegime { Near, Far };
/// sup of B_a(r) / r^{a-Q} (near, r <= 1) or B_a(r) / r^{-Q} (far, r >= 1).
/// `bounded` is false when the ratio still grows at the grid edge.
KernelBound bessel_bound(const HeatOperator& op, double a, BesselRegime regime, const std::vector<double>& radii);

std::vector<double> log_grid(double lo, double hi, int points);

/// (f * g)(x) = int f(y) g(y^{-1} x) dy. On abelian groups with a Euclidean
/// norm the integral is taken in z = y^{-1} x around the singularity of g;
/// elsewhere over the support of f.
IntegralEstimate convolve(const Fn& f, const IntegrandInfo& f_info, const Fn& g, const IntegrandInfo& g_info,
                          const Point& x, const QuasiNorm& norm, const IntegrationOptions& opt = {});

}  // namespace hypoineq
