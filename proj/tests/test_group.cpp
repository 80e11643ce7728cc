#include <doctest.h>

#include <cmath>
#include <random>

#include "hypoineq/errors.hpp"
#include "hypoineq/group.hpp"
#include "oracles.hpp"

using namespace hypoineq;

namespace {

std::vector<HomogeneousGroup> sample_groups() {
    return {HomogeneousGroup::euclidean(3), HomogeneousGroup::abelian({1.0, 2.0, 3.0}), HomogeneousGroup::heisenberg(1),
            HomogeneousGroup::heisenberg(2)};
}

double max_diff(const Point& a, const Point& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("group law: identity and inverse") {
    for (const auto& g : sample_groups()) {
        PointSampler s(g, 7);
        for (int i = 0; i < 500; ++i) {
            const Point x = s.next();
            CHECK(max_diff(g.law(x, g.identity()), x) <= 1e-12 * (1.0 + euclidean_length(x)));
            CHECK(max_diff(g.law(x, g.inverse(x)), g.identity()) <= 1e-12 * (1.0 + euclidean_length(x)));
        }
    }
}

TEST_CASE("dilation is an automorphism") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (const auto& g : sample_groups()) {
        PointSampler s(g, 11);
        for (int i = 0; i < 300; ++i) {
            const Point x = s.next(), y = s.next();
            const double r = u(rng);
            const Point lhs = g.law(g.dilate(r, x), g.dilate(r, y));
            const Point rhs = g.dilate(r, g.law(x, y));
            CHECK(max_diff(lhs, rhs) <= 1e-10 * (1.0 + euclidean_length(rhs)));
        }
    }
}

TEST_CASE("dilate examples") {
    const auto h1 = HomogeneousGroup::heisenberg(1);
    CHECK(h1.dilate(2.0, {1, 1, 1}) == Point{2, 2, 4});
    CHECK(h1.dilate(1.0, {0.3, -2, 5}) == Point{0.3, -2, 5});
    CHECK(HomogeneousGroup::euclidean(2).dilate(3.0, {1, 0}) == Point{3, 0});
    CHECK_THROWS_AS(h1.dilate(0.0, {1, 1, 1}), InvalidArgument);
    CHECK(h1.homogeneous_dim() == 4.0);
    CHECK(h1.horizontal_dim() == 2);
}

TEST_CASE("quasi-norm homogeneity and symmetry") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.01, 100.0);
    for (const auto& g : sample_groups()) {
        std::vector<QuasiNorm> norms;
        if (g.kind() == HomogeneousGroup::Kind::Heisenberg) {
            norms.push_back(QuasiNorm::kaplan(g));
        } else {
            norms.push_back(QuasiNorm::weighted_max(g));
            if (g.is_stratified()) norms.push_back(QuasiNorm::euclidean(g));
        }
        for (const auto& N : norms) {
            PointSampler s(g, 13);
            for (int i = 0; i < 300; ++i) {
                const Point x = s.next();
                const double l = u(rng);
                CHECK(std::abs(N(g.dilate(l, x)) - l * N(x)) <= 1e-12 * l * N(x) + 1e-300);
                CHECK(std::abs(N(g.inverse(x)) - N(x)) <= 1e-12 * N(x));
            }
            CHECK(N(g.identity()) == 0.0);
        }
    }
}

TEST_CASE("Kaplan norm is inverse-symmetric on 10^4 points") {
    const auto g = HomogeneousGroup::heisenberg(1);
    const auto N = QuasiNorm::kaplan(g);
    PointSampler s(g, 2024);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Point x = s.next();
        worst = std::max(worst, std::abs(N(g.inverse(x)) - N(x)) / N(x));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("sphere measures") {
    CHECK(QuasiNorm::euclidean(HomogeneousGroup::euclidean(2)).sphere_measure().value ==
          doctest::Approx(2.0 * oracle::pi).epsilon(1e-9));
    CHECK(QuasiNorm::euclidean(HomogeneousGroup::euclidean(1)).sphere_measure().value ==
          doctest::Approx(2.0).epsilon(1e-9));
    CHECK(QuasiNorm::euclidean(HomogeneousGroup::euclidean(3)).sphere_measure().value ==
          doctest::Approx(4.0 * oracle::pi).epsilon(1e-9));

    // Kaplan ball on H^1: |B| = int_{|z|<=1} 2 sqrt(1 - |z|^4) dz = pi^2 / 2, so |sphere| = 2 pi^2.
    const auto h1 = HomogeneousGroup::heisenberg(1);
    const double S = QuasiNorm::kaplan(h1).sphere_measure().value;
    CHECK(S == doctest::Approx(2.0 * oracle::pi * oracle::pi).epsilon(1e-7));

    // Monte Carlo volume of the Kaplan ball in [-1, 1]^3.
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto N = QuasiNorm::kaplan(h1);
    const int n = 2'000'000;
    int hits = 0;
    for (int i = 0; i < n; ++i)
        if (N({u(rng), u(rng), u(rng)}) < 1.0) ++hits;
    CHECK(4.0 * 8.0 * hits / n == doctest::Approx(S).epsilon(5e-3));

    // Weighted max norm on R^2 with weights (1, 2): the ball is [-1,1]^2, Q = 3.
    const auto w = QuasiNorm::weighted_max(HomogeneousGroup::abelian({1.0, 2.0}));
    CHECK(w.sphere_measure().value == doctest::Approx(12.0).epsilon(1e-7));
}

TEST_CASE("ball volume scales as r^Q") {
    for (const auto& N : {QuasiNorm::euclidean(HomogeneousGroup::euclidean(2)),
                          QuasiNorm::kaplan(HomogeneousGroup::heisenberg(1)),
                          QuasiNorm::weighted_max(HomogeneousGroup::abelian({1.0, 3.0}))}) {
        const double Q = N.group().homogeneous_dim();
        for (double r : {0.5, 1.0, 2.0, 4.0})
            CHECK(N.ball_volume(r) == doctest::Approx(std::pow(r, Q) * N.ball_volume(1.0)).epsilon(1e-12));
    }
}

TEST_CASE("triangle constant") {
    const auto e3 = HomogeneousGroup::euclidean(3);
    PointSampler s(e3, 1);
    CHECK(triangle_constant(QuasiNorm::euclidean(e3), s, 20000).C0 <= 1.0 + 1e-12);

    const auto h1 = HomogeneousGroup::heisenberg(1);
    PointSampler sh(h1, 1);
    const auto est = triangle_constant(QuasiNorm::kaplan(h1), sh, 50000);
    // The Cygan-Koranyi gauge is a genuine norm: the sampled max approaches 1 from below.
    CHECK(est.C0 >= 1.0 - 1e-3);
    CHECK(est.C0 <= 2.0);
    CHECK(est.argmax_x.size() == 3);
    const auto N = QuasiNorm::kaplan(h1);
    CHECK(N(h1.law(est.argmax_x, est.argmax_y)) / (N(est.argmax_x) + N(est.argmax_y)) ==
          doctest::Approx(est.C0).epsilon(1e-12));
}

TEST_CASE("polar coordinates") {
    const auto e2 = QuasiNorm::euclidean(HomogeneousGroup::euclidean(2));
    const auto pc = polar_coordinates(e2, {3, 4});
    CHECK(pc.r == doctest::Approx(5.0));
    CHECK(pc.y[0] == doctest::Approx(0.6));
    CHECK(pc.y[1] == doctest::Approx(0.8));

    const auto h1 = HomogeneousGroup::heisenberg(1);
    const auto K = QuasiNorm::kaplan(h1);
    const auto ph = polar_coordinates(K, {0, 0, 4});
    CHECK(ph.r == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(max_diff(ph.y, {0, 0, 1}) <= 1e-14);
    CHECK_THROWS_AS(polar_coordinates(K, {0, 0, 0}), InvalidArgument);

    PointSampler s(h1, 17);
    for (int i = 0; i < 200; ++i) {
        const Point x = s.next();
        const auto p = polar_coordinates(K, x);
        CHECK(max_diff(h1.dilate(p.r, p.y), x) <= 1e-12 * (1.0 + euclidean_length(x)));
        const auto q = polar_coordinates(K, h1.dilate(3.0, x));
        CHECK(q.r == doctest::Approx(3.0 * p.r).epsilon(1e-12));
        CHECK(max_diff(q.y, p.y) <= 1e-12);
    }
}

TEST_CASE("ids round-trip") {
    for (const std::string id : {"R:2:euclidean", "H:1:kaplan", "R:2:1,2:max", "H:2:kaplan", "R:3:euclidean"}) {
        const auto N = parse_norm_id(id);
        CHECK(parse_norm_id(N.id()).id() == N.id());
    }
    CHECK_THROWS_AS(parse_norm_id("Q:2:euclidean"), InvalidArgument);
    CHECK_THROWS_AS(parse_norm_id("R:2:taxicab"), InvalidArgument);
    CHECK_THROWS_AS(parse_group_id("R:2:1,2,3"), InvalidArgument);
}
