#include <doctest.h>

#include <cmath>

#include "hypoineq/errors.hpp"
#include "hypoineq/inequalities.hpp"
#include "oracles.hpp"

using namespace hypoineq;

namespace {

QuasiNorm eucl(int n) { return QuasiNorm::euclidean(HomogeneousGroup::euclidean(n)); }

InequalitySpec make_spec(TheoremId t, std::map<std::string, double> params, int n) {
    InequalitySpec s;
    s.theorem = t;
    s.params = std::move(params);
    s.norm = eucl(n);
    return s;
}

InequalitySpec hardy_sobolev_r3() { return make_spec(TheoremId::HardySobolev, {{"p", 2}, {"q", 2}, {"a", 1}, {"b", 2}}, 3); }

TrialFunction gaussian(const QuasiNorm& n, double s = 1.0) { return make_family("gaussian", n.group(), n)({s}); }

}  // namespace

TEST_CASE("admissibility examples") {
    CHECK(admissible(make_spec(TheoremId::IntHardy, {{"p", 2}, {"q", 2}, {"a", 0.5}, {"b", 1}}, 2)).ok);
    CHECK(admissible(make_spec(TheoremId::Hls, {{"p", 4.0 / 3.0}, {"q", 4.0 / 3.0}, {"lambda", 1}, {"alpha", 0}}, 2)).ok);
    CHECK_FALSE(admissible(make_spec(TheoremId::Hls, {{"p", 1.5}, {"q", 4.0 / 3.0}, {"lambda", 1}, {"alpha", 0}}, 2)).ok);

    const auto ckn = admissible(make_spec(
        TheoremId::Ckn, {{"p", 2}, {"q", 2}, {"r", 2}, {"a", 1}, {"beta", 0}, {"gamma", 0.5}, {"delta", 1}}, 3));
    CHECK_FALSE(ckn.ok);
    CHECK_FALSE(ckn.violations.empty());
    const auto ckn_ok = admissible(make_spec(
        TheoremId::Ckn, {{"p", 2}, {"q", 2}, {"r", 2}, {"a", 1}, {"beta", 0}, {"gamma", -1}, {"delta", 1}}, 3));
    CHECK(ckn_ok.ok);
    CHECK(ckn_ok.classical_ckn.has_value());

    CHECK(admissible(make_spec(TheoremId::LogHardy, {{"p", 2}, {"q", 3}, {"r", 3}}, 3)).ok);
    CHECK_FALSE(admissible(make_spec(TheoremId::LogHardy, {{"p", 2}, {"q", 5}, {"r", 3}}, 3)).ok);

    CHECK_THROWS_AS(admissible(make_spec(TheoremId::IntHardy, {{"p", 2}, {"q", 2}, {"a", 0.5}}, 2)), InvalidArgument);
    CHECK_THROWS_AS(parse_theorem("fermat"), InvalidArgument);
    CHECK(parse_theorem(theorem_name(TheoremId::HlsGraded)) == TheoremId::HlsGraded);
}

TEST_CASE("Hardy inequality ratio for a Gaussian on R^3") {
    // ||f/|x|||_2^2 = 2 pi^{3/2}, ||grad f||_2^2 = (3/2) pi^{3/2}.
    const auto s = hardy_sobolev_r3();
    const auto f = gaussian(s.norm);
    const auto r = ratio(s, f);
    CHECK(r.ratio == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-3));
    CHECK(r.lhs.value == doctest::Approx(std::sqrt(2.0 * std::pow(oracle::pi, 1.5))).epsilon(1e-6));
    CHECK(r.rhs.value == doctest::Approx(std::sqrt(1.5 * std::pow(oracle::pi, 1.5))).epsilon(1e-3));

    for (double c : {-3.0, 0.1, 250.0}) CHECK(ratio(s, f.scaled(c)).ratio == doctest::Approx(r.ratio).epsilon(1e-12));
    for (double l : {0.5, 2.0})
        CHECK(ratio(s, f.dilated(s.norm.group(), l)).ratio == doctest::Approx(r.ratio).epsilon(1e-2));

    CHECK_THROWS_AS(ratio(s, f.scaled(0.0)), DegenerateInput);
    auto bad = s;
    bad.params["b"] = 1.0;
    CHECK_THROWS_AS(ratio(bad, f), PreconditionViolation);
}

TEST_CASE("b = 0 gives the Sobolev ratio") {
    // 1/q = 1/p - a/Q on R^3 with p = 2, a = 1: q = 6.
    auto s = make_spec(TheoremId::HardySobolev, {{"p", 2}, {"q", 6}, {"a", 1}, {"b", 0}}, 3);
    const auto f = gaussian(s.norm);
    const auto r = ratio(s, f);
    const double direct = weighted_lp(f, 0.0, 6.0, s.norm).value / homogeneous_sobolev_norm(f, 1.0, 2.0, 3, s.spectral_M);
    CHECK(r.ratio == doctest::Approx(direct).epsilon(1e-10));
    // ||f||_6 = (pi / 3)^{1/4}.
    CHECK(r.lhs.value == doctest::Approx(std::pow(oracle::pi / 3.0, 0.25)).epsilon(1e-8));
}

TEST_CASE("weighted norms") {
    const auto n3 = eucl(3);
    const auto f = gaussian(n3);
    // || |x| f ||_2^2 = (3/2) pi^{3/2}.
    CHECK(weighted_lp(f, 1.0, 2.0, n3).value == doctest::Approx(std::sqrt(1.5 * std::pow(oracle::pi, 1.5))).epsilon(1e-8));
    // ||f||_1 = (2 pi)^{3/2}.
    CHECK(weighted_lp(f, 0.0, 1.0, n3).value == doctest::Approx(std::pow(2.0 * oracle::pi, 1.5)).epsilon(1e-8));
}

TEST_CASE("CKN with delta = 1 is the Hardy ratio") {
    const auto hs = hardy_sobolev_r3();
    auto c = hs;
    c.theorem = TheoremId::Ckn;
    c.params = {{"p", 2}, {"q", 2}, {"r", 2}, {"a", 1}, {"beta", 0}, {"gamma", -1}, {"delta", 1}};
    for (double s : {0.5, 1.0, 2.0}) {
        const auto f = gaussian(hs.norm, s);
        CHECK(ratio(c, f).ratio == doctest::Approx(ratio(hs, f).ratio).epsilon(1e-10));
    }
}

TEST_CASE("CKN interpolation is dilation invariant") {
    auto c = hardy_sobolev_r3();
    c.theorem = TheoremId::Ckn;
    c.params = {{"p", 2}, {"q", 2}, {"r", 2.4}, {"a", 1}, {"beta", 0}, {"gamma", -0.25}, {"delta", 0.5}};
    REQUIRE(admissible(c).ok);
    const auto f = gaussian(c.norm);
    const double base = ratio(c, f).ratio;
    CHECK(std::isfinite(base));
    for (double l : {0.5, 2.0}) CHECK(ratio(c, f.dilated(c.norm.group(), l)).ratio == doctest::Approx(base).epsilon(1e-2));
}

TEST_CASE("uncertainty Holder step") {
    auto s = hardy_sobolev_r3();
    s.theorem = TheoremId::Uncertainty;
    s.spectral_M = 64;
    for (double v : {0.5, 1.0, 2.0}) {
        const auto r = ratio(s, gaussian(s.norm, v));
        CHECK(r.extra("holder_defect") >= -1e-10 * std::max(1.0, r.extra("l2_squared")));
        // int |f|^2 = pi^{3/2} v^3.
        CHECK(r.extra("l2_squared") == doctest::Approx(std::pow(oracle::pi, 1.5) * v * v * v).epsilon(1e-8));
    }
}

TEST_CASE("integral Hardy with the Newtonian kernel") {
    auto s = make_spec(TheoremId::IntHardy, {{"p", 1.2}, {"q", 2}, {"a", 2}, {"b", 2}}, 3);
    s.kernel = KernelChoice::Riesz;
    REQUIRE(admissible(s).ok);
    const auto r = ratio(s, gaussian(s.norm));
    CHECK(r.lhs.value == doctest::Approx(oracle::newton_weighted_l2()).epsilon(1e-3));
    CHECK(r.ratio > 0.0);
    CHECK(parse_kernel(kernel_name(KernelChoice::TruncatedPower)) == KernelChoice::TruncatedPower);
}

TEST_CASE("HLS bilinear form against the Gaussian oracle") {
    auto s = make_spec(TheoremId::Hls, {{"p", 4.0 / 3.0}, {"q", 4.0 / 3.0}, {"lambda", 0.5}, {"alpha", 0.0}}, 1);
    s.mc_pairs = 400'000;
    REQUIRE(admissible(s).ok);
    const auto f = gaussian(s.norm);
    const auto r = ratio(s, f, f);
    const double exact = oracle::hls_gauss_1d(0.5);
    CHECK(exact == doctest::Approx(std::sqrt(oracle::pi) * std::sqrt(2.0) * std::tgamma(0.25)).epsilon(1e-12));
    CHECK(std::abs(r.lhs.value - exact) <= std::max(4.0 * r.lhs.abs_error, 0.03 * exact));

    auto again = ratio(s, f, f);
    CHECK(again.lhs.value == r.lhs.value);

    auto gs = s;
    gs.theorem = TheoremId::HlsGraded;
    gs.params = {{"p", 4.0 / 3.0}, {"q", 4.0 / 3.0}, {"lambda", 0.5}, {"alpha", 0.0}, {"a", 0.0}, {"b", 0.0}, {"beta", 0.0}};
    REQUIRE(admissible(gs).ok);
    CHECK(ratio(gs, f, f).ratio == doctest::Approx(r.ratio).epsilon(1e-12));
    // The one-function form pairs f with itself.
    CHECK(ratio(s, f).lhs.value == r.lhs.value);
}

TEST_CASE("reversed HLS failure") {
    const auto t = reversed_hls_demo(eucl(2), 1.0, {oracle::e, 1e2, 1e4});
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].closed_form == doctest::Approx(2.0 / std::sqrt(2.0 * oracle::pi)).epsilon(1e-12));
    CHECK(std::abs(t.rows[0].closed_form - 0.79788) <= 1e-5);
    CHECK(t.rows[1].closed_form == doctest::Approx(2.0 / std::sqrt(2.0 * oracle::pi * std::log(100.0))).epsilon(1e-12));
    CHECK(std::abs(t.rows[1].closed_form - 0.37178) <= 5e-5);
    for (const auto& row : t.rows) CHECK(row.numeric == doctest::Approx(row.closed_form).epsilon(0.05));
    CHECK(t.rows[2].numeric < t.rows[1].numeric);
    CHECK(t.agree);
    CHECK(t.decreasing);
    CHECK(t.p == doctest::Approx(2.0 / 3.0));
    CHECK_THROWS_AS(reversed_hls_demo(eucl(2), 1.0, {1.0}), InvalidArgument);
}
