#include "hypoineq/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "hypoineq/errors.hpp"

namespace hypoineq::numeric {

namespace {

constexpr std::array<double, 8> kXgk{0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                     0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                     0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                     0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk{0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                     0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                     0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                     0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
    double a, b, value, error;
    bool operator<(const Piece& o) const { return error < o.error; }
};

double checked(const Fn1& f, double x) {
    const double y = f(x);
    if (std::isnan(y)) throw EvaluationError("integrand returned NaN", {x});
    return y;
}

Piece gk15(const Fn1& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = checked(f, c);
    double kron = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double s = checked(f, c - dx) + checked(f, c + dx);
        kron += kWgk[j] * s;
        if (j % 2 == 1) gauss += kWg[j / 2] * s;
    }
    kron *= h;
    gauss *= h;
    double err = std::abs(kron - gauss);
    if (!std::isfinite(kron)) err = std::numeric_limits<double>::infinity();
    return {a, b, kron, err};
}

}  // namespace

double Tolerance::target(double value) const { return std::max(abs, rel * std::abs(value)); }

void CompensatedSum::add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
}

Estimate adaptive_gk15(const Fn1& f, double a, double b, Tolerance tol, std::size_t max_intervals) {
    if (a == b) return {};
    if (!(a < b)) {
        auto e = adaptive_gk15(f, b, a, tol, max_intervals);
        e.value = -e.value;
        return e;
    }
    std::priority_queue<Piece> heap;
    Piece first = gk15(f, a, b);
    heap.push(first);
    double total = first.value;
    double total_err = first.error;
    std::size_t evals = 15;
    while (total_err > tol.target(total)) {
        if (heap.size() >= max_intervals) {
            throw AccuracyError("adaptive quadrature exhausted its interval budget", total, total_err);
        }
        Piece worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b ||
            (worst.b - worst.a) < 64 * std::numeric_limits<double>::epsilon() * std::max(std::abs(worst.a), 1e-300)) {
            // Interval at roundoff resolution; nothing more to gain.
            if (!std::isfinite(total_err))
                throw AccuracyError("non-finite integrand on an unresolvable interval", total, total_err);
            break;
        }
        heap.pop();
        Piece left = gk15(f, worst.a, mid);
        Piece right = gk15(f, mid, worst.b);
        evals += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Periodically resum to avoid drift in the running totals.
        if (heap.size() % 64 == 0) {
            auto copy = heap;
            CompensatedSum v, e;
            while (!copy.empty()) {
                v.add(copy.top().value);
                e.add(copy.top().error);
                copy.pop();
            }
            total = v.value();
            total_err = e.value();
        }
    }
    CompensatedSum v, e;
    while (!heap.empty()) {
        v.add(heap.top().value);
        e.add(heap.top().error);
        heap.pop();
    }
    return {v.value(), e.value(), evals};
}

Estimate integrate_interval(const Fn1& f, double a, double b, const std::vector<double>& breakpoints,
                            Tolerance tol, std::size_t max_intervals) {
    std::vector<double> cuts{a};
    for (double p : breakpoints)
        if (p > a && p < b) cuts.push_back(p);
    std::sort(cuts.begin() + 1, cuts.end());
    cuts.push_back(b);
    Estimate out;
    CompensatedSum v;
    const Tolerance piece_tol{tol.abs / static_cast<double>(cuts.size() - 1), tol.rel};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] <= cuts[i]) continue;
        auto e = adaptive_gk15(f, cuts[i], cuts[i + 1], piece_tol, max_intervals);
        v.add(e.value);
        out.abs_error += e.abs_error;
        out.evaluations += e.evaluations;
    }
    out.value = v.value();
    return out;
}

Estimate integrate_positive_axis(const Fn1& f, double a, double b, const std::vector<double>& breakpoints,
                                 Tolerance tol) {
    if (!(a >= 0.0) || !(b > a)) {
        if (a == b) return {};
        throw InvalidArgument("integrate_positive_axis requires 0 <= a < b");
    }
    const bool zero_end = (a == 0.0);
    const bool inf_end = std::isinf(b);
    if (!zero_end && !inf_end && b / a < 8.0) return integrate_interval(f, a, b, breakpoints, tol);

    // g(s) = f(e^s) e^s on the log axis.
    const Fn1 g = [&f](double s) {
        const double r = std::exp(s);
        if (r == 0.0 || std::isinf(r)) return 0.0;
        const double y = f(r);
        if (y == 0.0) return 0.0;
        return y * r;
    };
    std::vector<double> log_breaks;
    double bp_min = 1.0, bp_max = 1.0;
    for (double p : breakpoints) {
        if (p > a && p < b) {
            log_breaks.push_back(std::log(p));
            bp_min = std::min(bp_min, p);
            bp_max = std::max(bp_max, p);
        }
    }
    double s_lo = zero_end ? 0.0 : std::log(a);
    double s_hi = inf_end ? 0.0 : std::log(b);
    if (zero_end && inf_end) {
        s_lo = std::log(bp_min) - 4.0;
        s_hi = std::log(bp_max) + 4.0;
    } else if (zero_end) {
        s_lo = std::min(std::log(bp_min), s_hi) - 4.0;
    } else if (inf_end) {
        s_hi = std::max(std::log(bp_max), s_lo) + 4.0;
    }

    Estimate core = integrate_interval(g, s_lo, s_hi, log_breaks, tol);
    CompensatedSum total;
    total.add(core.value);
    double err = core.abs_error;
    std::size_t evals = core.evaluations;

    auto extend = [&](double start, double step, double limit) {
        constexpr double kWidth = 4.0;
        constexpr int kMaxChunks = 180;
        double prev = std::numeric_limits<double>::quiet_NaN();
        int stagnant = 0;
        int small_in_row = 0;
        double s = start;
        for (int k = 0; k < kMaxChunks; ++k) {
            double next = s + step * kWidth;
            if ((step > 0 && next > limit) || (step < 0 && next < limit)) next = limit;
            if (next == s) break;
            const double target = tol.target(total.value());
            auto chunk = adaptive_gk15(g, std::min(s, next), std::max(s, next), {0.1 * target, tol.rel});
            total.add(chunk.value);
            err += chunk.abs_error;
            evals += chunk.evaluations;
            const double c = std::abs(chunk.value);
            if (!std::isnan(prev) && prev > 0.0 && c >= 0.999 * prev && c > target * 1e-3) {
                if (++stagnant >= 6)
                    throw DivergenceError("integral diverges: log-axis chunks do not decay", total.value(),
                                          std::numeric_limits<double>::infinity());
            } else {
                stagnant = 0;
            }
            double tail = 0.0;
            if (!std::isnan(prev) && prev > 0.0 && c < prev) {
                const double rho = c / prev;
                tail = c * rho / (1.0 - rho);
            } else if (c > 0.0) {
                tail = c;
            }
            if (c <= 0.25 * tol.target(total.value()) && tail <= 0.25 * tol.target(total.value())) {
                if (++small_in_row >= 2) {
                    err += tail;
                    return;
                }
            } else {
                small_in_row = 0;
            }
            prev = c;
            s = next;
            if (s == limit) return;
        }
        throw AccuracyError("log-axis tail did not converge", total.value(), err);
    };
    if (zero_end) extend(s_lo, -1.0, -745.0);
    if (inf_end) extend(s_hi, +1.0, 709.0);
    return {total.value(), err, evals};
}

double composite_gl(const Fn1& f, double a, double b, int cells) {
    const double h = (b - a) / cells;
    CompensatedSum sum;
    for (int c = 0; c < cells; ++c) {
        const double mid = a + (c + 0.5) * h;
        for (int j = 0; j < 8; ++j) sum.add(GaussLegendre8::weights[j] * f(mid + 0.5 * h * GaussLegendre8::nodes[j]));
    }
    return 0.5 * h * sum.value();
}

}  // namespace hypoineq::numeric
