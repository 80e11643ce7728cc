#include <doctest.h>

#include <cmath>

#include "hypoineq/errors.hpp"
#include "hypoineq/estimation.hpp"
#include "hypoineq/inequalities.hpp"
#include "hypoineq/numeric.hpp"
#include "hypoineq/trudinger_moser.hpp"

using namespace hypoineq;

namespace {

QuasiNorm eucl(int n) { return QuasiNorm::euclidean(HomogeneousGroup::euclidean(n)); }

OptimizationTask quadratic(std::size_t budget) {
    OptimizationTask t;
    t.objective = [](const std::vector<double>& th) { return -(th[0] - 0.3) * (th[0] - 0.3); };
    t.box = {{"x", 0.0, 1.0}};
    t.budget = budget;
    return t;
}

}  // namespace

TEST_CASE("maximize a quadratic") {
    const auto r = maximize(quadratic(200));
    CHECK(r.theta[0] == doctest::Approx(0.3).epsilon(1e-4));
    CHECK(std::abs(r.theta[0] - 0.3) <= 1e-4);
    for (const auto& tp : r.trace) CHECK(r.value >= tp.value);
    CHECK(r.evaluations <= 200);

    const auto again = maximize(quadratic(200));
    CHECK(again.theta == r.theta);
    CHECK(again.trace.size() == r.trace.size());

    // Two-parameter problem on a log-scaled axis.
    OptimizationTask t;
    t.objective = [](const std::vector<double>& th) {
        return -std::pow(std::log10(th[0]) - 1.0, 2) - std::pow(th[1] + 0.5, 2);
    };
    t.box = {{"s", 1e-3, 1e3}, {"y", -1.0, 1.0}};
    t.budget = 400;
    const auto r2 = maximize(t);
    CHECK(r2.theta[0] == doctest::Approx(10.0).epsilon(1e-2));
    CHECK(r2.theta[1] == doctest::Approx(-0.5).epsilon(1e-2));
}

TEST_CASE("budget behaviour") {
    OptimizationTask t;
    t.objective = [](const std::vector<double>& th) { return std::sin(5.0 * th[0]) * std::cos(3.0 * th[1]) - 0.1 * th[0]; };
    t.box = {{"a", -2.0, 2.0}, {"b", -2.0, 2.0}};
    double prev = -kInf;
    for (std::size_t b : {5, 10, 20, 40, 80, 160}) {
        t.budget = b;
        const double v = maximize(t).value;
        CHECK(v >= prev);
        prev = v;
    }
    t.budget = 1;
    const auto one = maximize(t);
    CHECK(one.truncated);
    CHECK(one.evaluations == 1);
}

TEST_CASE("degenerate points are excluded") {
    OptimizationTask t;
    t.objective = [](const std::vector<double>& th) { return th[0] < 0.5 ? -kInf : 1.0 - th[0]; };
    t.box = {{"x", 0.0, 1.0}};
    const auto r = maximize(t);
    CHECK(r.theta[0] >= 0.5);
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-3));

    t.objective = [](const std::vector<double>&) -> double { throw DegenerateInput("zero denominator"); };
    CHECK_THROWS_AS(maximize(t), NoFeasiblePoint);
    t.objective = [](const std::vector<double>&) { return -kInf; };
    CHECK_THROWS_AS(maximize(t), NoFeasiblePoint);
}

TEST_CASE("scale-invariant Hardy ratio gives a flat trace") {
    InequalitySpec s;
    s.theorem = TheoremId::HardySobolev;
    s.params = {{"p", 2}, {"q", 2}, {"a", 1}, {"b", 2}};
    s.norm = eucl(3);
    const auto fam = make_family("gaussian", s.norm.group(), s.norm);
    const double single = ratio(s, fam({1.0})).ratio;
    OptimizationTask t;
    t.objective = [&](const std::vector<double>& th) { return ratio(s, fam(th)).ratio; };
    t.box = {{"s", 0.1, 10.0}};
    t.budget = 12;
    const auto r = maximize(t);
    CHECK(r.value == doctest::Approx(single).epsilon(1e-3));
    for (const auto& tp : r.trace) CHECK(tp.value == doctest::Approx(single).epsilon(1e-3));
}

TEST_CASE("q scans") {
    const std::vector<double> grid{2, 4, 8, 16, 32};
    const std::vector<ParamBound> box{{"t", 0.0, 1.0}};
    const auto flat = q_scan([](double, const std::vector<double>&) { return 1.0; }, grid, box, 10);
    CHECK_FALSE(flat.unbounded);
    CHECK(flat.tail == 1.0);
    CHECK(flat.median == 1.0);
    REQUIRE(flat.rows.size() == grid.size());
    for (const auto& row : flat.rows) CHECK(row.sup == 1.0);

    // |x|^{-Q} on R^2 cut off below e^{-q}: int dr / r over (e^{-q}, 1) = q.
    const auto div = q_scan(
        [](double q, const std::vector<double>&) {
            return numeric::integrate_positive_axis([](double r) { return 1.0 / r; }, std::exp(-q), 1.0, {}, {1e-14, 1e-10})
                .value;
        },
        grid, box, 10);
    CHECK(div.rows.back().sup == doctest::Approx(32.0).epsilon(1e-8));
    CHECK(div.unbounded);

    // Critical Hardy ratio over the spike family stays bounded.
    const auto n2 = eucl(2);
    const auto spike = make_family("moser-spike", n2.group(), n2);
    const auto crit = q_scan(
        [&](double q, const std::vector<double>& th) {
            return critical_hardy_ratio(spike(th), n2, 2.0, q, 0.0, 1.0, TMNormalization::GradH);
        },
        {4, 8, 16, 32}, {{"delta", 1e-6, 0.5}}, 12);
    CHECK_FALSE(crit.unbounded);
    CHECK(std::isfinite(crit.tail));

    CHECK_THROWS_AS(q_scan([](double, const std::vector<double>&) { return 1.0; }, {2, 4, 8}, box), InvalidArgument);
    CHECK_THROWS_AS(q_scan([](double, const std::vector<double>&) { return 1.0; }, {2, 8, 4, 16}, box), InvalidArgument);
}

TEST_CASE("alpha bisection") {
    const auto step = [](double a) { return a <= 0.5; };
    const auto r = alpha_bisect(step, 0.0, 1.0);
    CHECK(std::abs(r.alpha - 0.5) <= 1e-3);
    CHECK(r.upper >= r.alpha);
    CHECK(r.iterations <= 20);
    CHECK(r.converged);

    // Reparametrisation a = u^3 moves the threshold to 0.5^{1/3}.
    const auto rp = alpha_bisect([&](double u) { return step(u * u * u); }, 0.0, 1.0);
    CHECK(std::abs(std::pow(rp.alpha, 3.0) - 0.5) <= 3e-3);

    CHECK_THROWS_AS(alpha_bisect(step, 0.6, 1.0), RangeError);
    CHECK_THROWS_AS(alpha_bisect(step, 0.0, 0.4), RangeError);
}
