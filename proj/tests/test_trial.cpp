#include <doctest.h>

#include <cmath>

#include "hypoineq/errors.hpp"
#include "hypoineq/trial_functions.hpp"
#include "oracles.hpp"

using namespace hypoineq;

namespace {

QuasiNorm eucl(int n) { return QuasiNorm::euclidean(HomogeneousGroup::euclidean(n)); }

}  // namespace

TEST_CASE("family examples") {
    const auto n2 = eucl(2);
    const auto& g = n2.group();
    const auto rev = make_family("reversed-hls", g, n2)({1.0, 100.0});
    CHECK(rev({2.0, 0.0}) == doctest::Approx(1.0 / 8.0));
    CHECK(rev({0.5, 0.0}) == 0.0);
    CHECK(rev({150.0, 0.0}) == 0.0);
    const auto spike = make_family("moser-spike", g, n2)({0.1});
    CHECK(spike({0.05, 0.0}) == 1.0);
    CHECK(spike({0.0, 0.0}) == 1.0);
    CHECK(spike({std::sqrt(0.1), 0.0}) == doctest::Approx(0.5));
    CHECK(spike({1.0, 0.0}) == 0.0);
    CHECK(make_family("gaussian", g, n2)({1.0})({0.0, 0.0}) == 1.0);
    const auto ann = make_family("annulus-indicator", g, n2)({1.0, 2.0});
    CHECK(ann({1.5, 0.0}) == 1.0);
    CHECK(ann({0.5, 0.0}) == 0.0);
    CHECK(make_family("ramp", g, n2)({2.0})({3.0, 4.0}) == 2.0);
    CHECK_THROWS_AS(make_family("no-such-family", g, n2), InvalidArgument);
    CHECK(family_names().size() == 7);
}

TEST_CASE("profiles match pointwise evaluation") {
    for (int n : {1, 2, 3}) {
        const auto N = eucl(n);
        for (const auto& name : family_names()) {
            const auto fam = make_family(name, N.group(), N);
            const auto f = fam(fam.center());
            if (!f.is_radial()) continue;
            for (double r : {0.01, 0.3, 0.9, 1.7, 5.0}) {
                Point x(static_cast<std::size_t>(n), 0.0);
                x[0] = r;
                CHECK(f(x) == doctest::Approx(f.profile(r)).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("Gaussian dilation coherence") {
    const auto n3 = eucl(3);
    const auto& g = n3.group();
    const auto fam = make_family("gaussian", g, n3);
    for (double s : {0.5, 2.0})
        for (double l : {0.5, 3.0}) {
            const auto a = fam({s}).dilated(g, l);
            const auto b = fam({s / l});
            for (const Point& x : {Point{0.1, 0.2, 0.3}, Point{1.0, -1.0, 0.5}})
                CHECK(a(x) == doctest::Approx(b(x)).epsilon(1e-14));
        }
}

TEST_CASE("horizontal gradient on H^1") {
    const auto h1 = HomogeneousGroup::heisenberg(1);
    const Fn t = [](const Point& x) { return x[2]; };
    const auto grad = horizontal_gradient(t, h1, {1.0, 0.0, 0.0});
    CHECK(grad[0] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(grad[1] == doctest::Approx(0.5).epsilon(1e-10));

    // Functions of z alone have the planar gradient.
    const Fn rz = [](const Point& x) { return std::sin(x[0]) * x[1] * x[1]; };
    const auto gz = horizontal_gradient(rz, h1, {0.4, -0.7, 3.0});
    CHECK(gz[0] == doctest::Approx(std::cos(0.4) * 0.49).epsilon(1e-7));
    CHECK(gz[1] == doctest::Approx(std::sin(0.4) * 2.0 * -0.7).epsilon(1e-7));

    const auto gc = horizontal_gradient([](const Point&) { return 4.0; }, h1, {1.0, 2.0, 3.0});
    CHECK(gc[0] == 0.0);
    CHECK(gc[1] == 0.0);
}

TEST_CASE("horizontal gradient is second order in h") {
    const auto h1 = HomogeneousGroup::heisenberg(1);
    // X = d_x - y/2 d_t, Y = d_y + x/2 d_t.
    const Fn f = [](const Point& p) { return p[0] * p[0] * p[0] * p[1] + std::pow(p[2], 3); };
    const Point x{0.7, -0.4, 0.9};
    const double Xf = 3.0 * 0.49 * -0.4 - (-0.4) / 2.0 * 3.0 * 0.81;
    const double Yf = std::pow(0.7, 3) + 0.7 / 2.0 * 3.0 * 0.81;
    double prev = 0.0;
    for (double h : {0.1, 0.05, 0.025}) {
        const auto g = horizontal_gradient(f, h1, x, h);
        const double err = std::hypot(g[0] - Xf, g[1] - Yf);
        if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.1));
        prev = err;
    }
}

TEST_CASE("gradient norm of radial functions") {
    const auto n2 = eucl(2);
    const auto f = make_family("gaussian", n2.group(), n2)({1.0});
    for (double r : {0.2, 1.0, 2.5})
        CHECK(horizontal_gradient_norm(f, n2, {r, 0.0}) == doctest::Approx(r * std::exp(-0.5 * r * r)).epsilon(1e-8));
    const auto spike = make_family("moser-spike", n2.group(), n2)({1e-6});
    // |grad m| = 1 / (r log(1/delta)) on delta < r < 1.
    CHECK(horizontal_gradient_norm(spike, n2, {1e-3, 0.0}) ==
          doctest::Approx(1.0 / (1e-3 * std::log(1e6))).epsilon(1e-6));
}

TEST_CASE("norms and normalisation") {
    const auto n2 = eucl(2);
    const auto& g = n2.group();
    // exp(-|x|^2) has L^2 norm sqrt(pi / 2); s = 1/sqrt(2) in the family.
    const auto f = make_family("gaussian", g, n2)({1.0 / std::sqrt(2.0)});
    CHECK(function_norm(f, NormSpec::lp(2.0), n2) == doctest::Approx(std::sqrt(oracle::pi / 2.0)).epsilon(1e-8));
    const auto u = normalize(f, NormSpec::lp(2.0), n2);
    CHECK(function_norm(u, NormSpec::lp(2.0), n2) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(u({0.0, 0.0}) == doctest::Approx(std::pow(oracle::pi / 2.0, -0.5)).epsilon(1e-8));
    const auto uu = normalize(u, NormSpec::lp(2.0), n2);
    CHECK(uu({0.0, 0.0}) == doctest::Approx(u({0.0, 0.0})).epsilon(1e-12));
    CHECK_THROWS_AS(normalize(f.scaled(0.0), NormSpec::lp(2.0), n2), InvalidArgument);

    // ||grad exp(-|x|^2/2)||_2 = sqrt(pi) on R^2, independent of the width.
    for (double s : {0.3, 1.0, 4.0})
        CHECK(function_norm(make_family("gaussian", g, n2)({s}), NormSpec::grad_q(), n2) ==
              doctest::Approx(std::sqrt(oracle::pi)).epsilon(1e-7));
    // ||grad m_delta||_2^2 = 2 pi / log(1/delta).
    for (double d : {0.1, 1e-4, 1e-9})
        CHECK(function_norm(make_family("moser-spike", g, n2)({d}), NormSpec::grad_q(), n2) ==
              doctest::Approx(std::sqrt(2.0 * oracle::pi / std::log(1.0 / d))).epsilon(1e-7));
}

TEST_CASE("scaled and dilated metadata") {
    const auto n2 = eucl(2);
    const auto& g = n2.group();
    const auto b = make_family("bump", g, n2)({2.0});
    CHECK(b.support_radius == doctest::Approx(2.0));
    const auto d = b.dilated(g, 4.0);
    CHECK(d.support_radius == doctest::Approx(0.5));
    CHECK(b.scaled(3.0)({0.5, 0.5}) == doctest::Approx(3.0 * b({0.5, 0.5})));
    CHECK(b.param("rho") == 2.0);
    CHECK_FALSE(b.label().empty());
}
