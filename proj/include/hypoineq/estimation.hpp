#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hypoineq/trial_functions.hpp"

namespace hypoineq {

using Objective = std::function<double(const std::vector<double>&)>;

/// Maximisation of `objective` over a parameter box. The objective may
/// return -inf (or throw DegenerateInput) for degenerate points; those are
/// excluded from the argmax.
struct OptimizationTask {
    Objective objective;
    std::vector<ParamBound> box;
    std::size_t budget = 200;
    std::uint64_t seed = 12345;
    int random_restarts = 1;
    /// Simplex diameter, relative to the box, at which a restart stops.
    double xtol = 1e-4;
};

struct TracePoint {
    std::vector<double> theta;
    double value;
};

struct OptimizationResult {
    std::vector<double> theta;
    double value = 0.0;
    std::vector<TracePoint> trace;
    std::size_t evaluations = 0;
    int restarts = 0;
    bool truncated = false;  // a restart stopped on the budget, not on the simplex size
};

/// Nelder-Mead simplex with restarts from the centre, three corners and
/// seeded random points. Parameters with lo > 0 and hi / lo >= 100 are
/// searched on a log scale. Deterministic given the seed; a larger budget
/// extends every restart's trajectory, so the value never decreases.
OptimizationResult maximize(const OptimizationTask& task);

using QObjective = std::function<double(double q, const std::vector<double>& theta)>;

struct QScanRow {
    double q = 0.0;
    double sup = 0.0;
    std::vector<double> argmax;
};

struct QScan {
    std::vector<QScanRow> rows;
    double tail = 0.0;    // max of the last two family sups
    double median = 0.0;
    bool unbounded = false;  // last sup infinite or above twice the median
};

/// Family sup of ratio(q, theta) over `box` at every q of an ascending grid
/// of at least four points.
QScan q_scan(const QObjective& ratio, const std::vector<double>& q_grid, const std::vector<ParamBound>& box,
             std::size_t budget = 60, std::uint64_t seed = 12345);

struct BisectionResult {
    double alpha = 0.0;  // largest alpha found bounded
    double upper = 0.0;  // smallest alpha found unbounded
    int iterations = 0;
    bool converged = false;
};

/// Largest alpha in [lo, hi] with bounded(alpha) true, assuming bounded is
/// monotone (true below a threshold). Stops at relative width rel_tol or
/// after max_iter halvings. Throws RangeError unless bounded(lo) and
/// !bounded(hi).
BisectionResult alpha_bisect(const std::function<bool(double)>& bounded, double lo, double hi, double rel_tol = 1e-3,
                             int max_iter = 20);

}  // namespace hypoineq
