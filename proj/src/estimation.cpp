#include "hypoineq/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "hypoineq/errors.hpp"

namespace hypoineq {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Maps the unit cube onto the box, logarithmically for wide positive ranges.
struct BoxMap {
    std::vector<ParamBound> box;
    std::vector<bool> log_scale;

    explicit BoxMap(const std::vector<ParamBound>& b) : box(b) {
        for (const auto& pb : box) {
            if (!(pb.lo <= pb.hi)) throw InvalidArgument("parameter box for '" + pb.name + "' has lo > hi");
            log_scale.push_back(pb.lo > 0.0 && pb.hi / pb.lo >= 100.0);
        }
    }

    std::vector<double> to_theta(const std::vector<double>& u) const {
        std::vector<double> th(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double v = std::clamp(u[i], 0.0, 1.0);
            const auto& b = box[i];
            th[i] = log_scale[i] ? b.lo * std::pow(b.hi / b.lo, v) : b.lo + v * (b.hi - b.lo);
        }
        return th;
    }
};

class Evaluator {
public:
    Evaluator(const OptimizationTask& task, const BoxMap& map, OptimizationResult& out)
        : task_(task), map_(map), out_(out) {}

    std::size_t used() const { return out_.evaluations; }
    bool exhausted() const { return out_.evaluations >= task_.budget; }

    double operator()(const std::vector<double>& u) {
        const auto theta = map_.to_theta(u);
        double v = kNegInf;
        try {
            v = task_.objective(theta);
        } catch (const DegenerateInput&) {
            v = kNegInf;
        }
        if (std::isnan(v)) v = kNegInf;
        ++out_.evaluations;
        out_.trace.push_back({theta, v});
        if (v > kNegInf && (out_.theta.empty() || v > out_.value)) {
            out_.value = v;
            out_.theta = theta;
        }
        return v;
    }

private:
    const OptimizationTask& task_;
    const BoxMap& map_;
    OptimizationResult& out_;
};

double simplex_diameter(const std::vector<std::vector<double>>& s) {
    double d = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i)
        for (std::size_t k = 0; k < s[i].size(); ++k) d = std::max(d, std::abs(s[i][k] - s[0][k]));
    return d;
}

// One Nelder-Mead run in the unit cube with at most `cap` evaluations.
// Returns true when it stopped on the budget.
bool nelder_mead(Evaluator& eval, std::vector<double> start, std::size_t cap, double xtol) {
    const std::size_t d = start.size();
    const std::size_t limit = eval.used() + cap;
    auto can = [&] { return eval.used() < limit && !eval.exhausted(); };

    std::vector<std::vector<double>> s{start};
    for (std::size_t i = 0; i < d; ++i) {
        auto v = start;
        v[i] += v[i] + 0.1 <= 1.0 ? 0.1 : -0.1;
        s.push_back(v);
    }
    std::vector<double> f;
    for (const auto& v : s) {
        if (!can()) return true;
        f.push_back(eval(v));
    }

    auto clamp = [](std::vector<double> v) {
        for (double& x : v) x = std::clamp(x, 0.0, 1.0);
        return v;
    };
    auto blend = [&](const std::vector<double>& a, const std::vector<double>& b, double t) {
        std::vector<double> r(d);
        for (std::size_t k = 0; k < d; ++k) r[k] = a[k] + t * (b[k] - a[k]);
        return clamp(r);
    };

    while (true) {
        // Order descending: s[0] best, s[d] worst.
        std::vector<std::size_t> idx(s.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return f[a] > f[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> f2;
        for (auto i : idx) {
            s2.push_back(s[i]);
            f2.push_back(f[i]);
        }
        s.swap(s2);
        f.swap(f2);
        if (simplex_diameter(s) < xtol) return false;
        if (!can()) return true;

        std::vector<double> c(d, 0.0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k) c[k] += s[i][k] / static_cast<double>(d);

        const auto xr = blend(c, s[d], -1.0);
        const double fr = eval(xr);
        if (fr > f[0]) {
            if (!can()) {
                s[d] = xr;
                f[d] = fr;
                return true;
            }
            const auto xe = blend(c, s[d], -2.0);
            const double fe = eval(xe);
            if (fe > fr) {
                s[d] = xe;
                f[d] = fe;
            } else {
                s[d] = xr;
                f[d] = fr;
            }
            continue;
        }
        if (fr > f[d - 1]) {
            s[d] = xr;
            f[d] = fr;
            continue;
        }
        if (!can()) return true;
        const bool outside = fr > f[d];
        const auto xc = outside ? blend(c, xr, 0.5) : blend(c, s[d], 0.5);
        const double fc = eval(xc);
        if (outside ? fc >= fr : fc > f[d]) {
            s[d] = xc;
            f[d] = fc;
            continue;
        }
        for (std::size_t i = 1; i <= d; ++i) {
            if (!can()) return true;
            s[i] = blend(s[0], s[i], 0.5);
            f[i] = eval(s[i]);
        }
    }
}

}  // namespace

OptimizationResult maximize(const OptimizationTask& task) {
    if (!task.objective) throw InvalidArgument("maximize needs an objective");
    if (task.box.empty()) throw InvalidArgument("maximize needs a non-empty parameter box");
    if (task.budget == 0) throw InvalidArgument("maximize needs a positive budget");
    const BoxMap map(task.box);
    const std::size_t d = task.box.size();

    std::vector<std::vector<double>> starts;
    starts.emplace_back(d, 0.5);
    starts.emplace_back(d, 0.0);
    starts.emplace_back(d, 1.0);
    std::vector<double> alt(d);
    for (std::size_t i = 0; i < d; ++i) alt[i] = i % 2 == 0 ? 0.0 : 1.0;
    starts.push_back(alt);
    std::mt19937_64 rng(task.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int r = 0; r < task.random_restarts; ++r) {
        std::vector<double> u(d);
        for (double& x : u) x = unif(rng);
        starts.push_back(u);
    }

    OptimizationResult out;
    out.value = kNegInf;
    Evaluator eval(task, map, out);
    const std::size_t cap = std::max(d + 1, task.budget / starts.size());
    for (const auto& st : starts) {
        if (eval.exhausted()) {
            out.truncated = true;
            break;
        }
        const std::size_t this_cap = std::min(cap, task.budget - eval.used());
        if (nelder_mead(eval, st, this_cap, task.xtol)) out.truncated = true;
        ++out.restarts;
    }
    if (out.theta.empty()) throw NoFeasiblePoint("every evaluated parameter point was degenerate");
    return out;
}

QScan q_scan(const QObjective& ratio, const std::vector<double>& q_grid, const std::vector<ParamBound>& box,
             std::size_t budget, std::uint64_t seed) {
    if (q_grid.size() < 4) throw InvalidArgument("q scan needs at least four grid points");
    for (std::size_t i = 1; i < q_grid.size(); ++i)
        if (!(q_grid[i] > q_grid[i - 1])) throw InvalidArgument("q grid must be strictly ascending");

    QScan scan;
    for (double q : q_grid) {
        OptimizationTask task;
        task.objective = [&ratio, q](const std::vector<double>& th) { return ratio(q, th); };
        task.box = box;
        task.budget = budget;
        task.seed = seed;
        const auto r = maximize(task);
        scan.rows.push_back({q, r.value, r.theta});
    }
    std::vector<double> sups;
    for (const auto& row : scan.rows) sups.push_back(row.sup);
    const std::size_t n = sups.size();
    scan.tail = std::max(sups[n - 1], sups[n - 2]);
    std::vector<double> sorted = sups;
    std::sort(sorted.begin(), sorted.end());
    scan.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    scan.unbounded = !std::isfinite(sups[n - 1]) || sups[n - 1] > 2.0 * scan.median;
    return scan;
}

BisectionResult alpha_bisect(const std::function<bool(double)>& bounded, double lo, double hi, double rel_tol,
                             int max_iter) {
    if (!(lo < hi)) throw InvalidArgument("alpha bisection needs lo < hi");
    if (!bounded(lo)) throw RangeError("alpha bisection: the functional is already unbounded at the lower end");
    if (bounded(hi)) throw RangeError("alpha bisection: the functional is still bounded at the upper end");
    BisectionResult r;
    while (r.iterations < max_iter) {
        if (hi - lo <= rel_tol * std::abs(hi)) {
            r.converged = true;
            break;
        }
        const double mid = 0.5 * (lo + hi);
        if (bounded(mid))
            lo = mid;
        else
            hi = mid;
        ++r.iterations;
    }
    if (!r.converged && hi - lo <= rel_tol * std::abs(hi)) r.converged = true;
    r.alpha = lo;
    r.upper = hi;
    return r;
}

}  // namespace hypoineq
