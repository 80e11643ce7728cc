#pragma once

// Low-level one-dimensional quadrature shared by every module.

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace hypoineq::numeric {

using Fn1 = std::function<double(double)>;

struct Estimate {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t evaluations = 0;
};

struct Tolerance {
    double abs = 1e-12;
    double rel = 1e-10;
    double target(double value) const;
};

/// Eight-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre8 {
    static constexpr std::array<double, 8> nodes{
        -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
        0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
    static constexpr std::array<double, 8> weights{
        0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
        0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
};

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Globally adaptive Gauss-Kronrod (7, 15) on a finite interval.
/// Throws AccuracyError with the partial estimate when max_intervals is hit,
/// EvaluationError when the integrand yields NaN.
Estimate adaptive_gk15(const Fn1& f, double a, double b, Tolerance tol, std::size_t max_intervals = 4000);

/// adaptive_gk15 split at interior breakpoints.
Estimate integrate_interval(const Fn1& f, double a, double b, const std::vector<double>& breakpoints,
                            Tolerance tol, std::size_t max_intervals = 4000);

/// Integral of f over [a, b] with 0 <= a < b <= +inf. Uses the substitution
/// r = exp(s), i.e. a geometrically graded mesh, so integrable power
/// singularities at 0 and power tails at infinity are handled. Infinite
/// ends are covered by chunks of the log axis until the contributions die
/// out. Chunks that refuse to shrink raise DivergenceError.
Estimate integrate_positive_axis(const Fn1& f, double a, double b, const std::vector<double>& breakpoints,
                                 Tolerance tol);

/// Composite Gauss-Legendre (8 points per cell) on [a, b] with a fixed number
/// of equal cells. Non-adaptive; used where a fixed node set is required.
double composite_gl(const Fn1& f, double a, double b, int cells);

}  // namespace hypoineq::numeric
