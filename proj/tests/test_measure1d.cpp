#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "dilation/measure1d.hpp"
#include "dilation/model.hpp"
#include "dilation/errors.hpp"

using namespace dilation;
using namespace dilation::measure1d;
using model::preset_density;
using numerics::kInf;

namespace {

IntervalUnion random_union(std::mt19937& rng, int max_comps = 4) {
    std::uniform_int_distribution<int> kd(1, max_comps);
    std::uniform_real_distribution<double> xd(-3.0, 3.0);
    const int k = kd(rng);
    std::vector<numerics::Interval> comps;
    std::vector<double> pts(2 * k);
    for (auto& p : pts) p = xd(rng);
    std::sort(pts.begin(), pts.end());
    for (int i = 0; i < k; ++i) comps.push_back({pts[2 * i], pts[2 * i + 1]});
    return IntervalUnion(std::move(comps));
}

Density1D cubic_density() {
    // density proportional to e^{-x^3} on [0, inf)
    return Density1D({0.0, kInf}, [](double x) { return x * x * x; },
                     [](double x) { return 3.0 * x * x; }, std::nullopt, {},
                     "exp(-x^3)");
}

Density1D double_exponential() {
    return Density1D({-kInf, kInf}, [](double x) { return std::abs(x); },
                     [](double x) { return x >= 0 ? 1.0 : -1.0; },
                     std::nullopt, {}, "two-sided-exp");
}

} // namespace

TEST_CASE("IntervalUnion normalization and JSON") {
    IntervalUnion u({{3.0, 4.0}, {0.0, 1.0}, {0.5, 2.0}});
    REQUIRE(u.size() == 2);
    CHECK(u.components()[0].lo == 0.0);
    CHECK(u.components()[0].hi == 2.0);
    CHECK(u.to_json() == "[[0.0,2.0],[3.0,4.0]]");
    auto v = IntervalUnion::from_json("[[1, 2], [-4, -3]]");
    CHECK(v.components()[0].lo == -4.0);
    CHECK_THROWS_AS(IntervalUnion({{2.0, 1.0}}), DomainError);
}

TEST_CASE("measure") {
    auto expd = preset_density("exponential");
    CHECK(measure(expd, IntervalUnion::single(0, std::log(2.0))) ==
          doctest::Approx(0.5).epsilon(1e-9));
    CHECK(measure(expd, IntervalUnion()) == 0.0);
    auto u = preset_density("uniform:1");
    CHECK(measure(u, IntervalUnion::single(0.25, 0.75)) ==
          doctest::Approx(0.5).epsilon(1e-9));
    // components are clipped to the support
    CHECK(measure(u, IntervalUnion::single(-5.0, 0.5)) ==
          doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("epsilon_dilate: single interval") {
    auto r = epsilon_dilate(IntervalUnion::single(0, 1), 1.0 / 3.0);
    REQUIRE(r.dilated.size() == 1);
    CHECK(r.dilated.components()[0].lo == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(r.dilated.components()[0].hi == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(r.exact);

    auto A = IntervalUnion({{0.0, 0.5}, {2.0, 2.5}});
    auto r0 = epsilon_dilate(A, 0.0);
    CHECK(r0.dilated.subset_of(A));
    CHECK(A.subset_of(r0.dilated));
    CHECK_THROWS_AS(epsilon_dilate(A, 1.0), DomainError);
}

TEST_CASE("epsilon_dilate: far-apart union stays split") {
    auto A = IntervalUnion({{0.0, 1.0}, {10.0, 11.0}});
    auto r = epsilon_dilate(A, 0.1);
    REQUIRE(r.dilated.size() == 2);
    CHECK(r.dilated.components()[0].lo == doctest::Approx(-1.0 / 9.0));
    CHECK(r.dilated.components()[0].hi == doctest::Approx(1.0 + 1.0 / 9.0));
    CHECK(r.dilated.components()[1].lo == doctest::Approx(10.0 - 1.0 / 9.0));
    CHECK(r.dilated.components()[1].hi == doctest::Approx(11.0 + 1.0 / 9.0));
}

TEST_CASE("epsilon_dilate: gaps close once the covered fraction wins") {
    // Two halves of [0,1] separated by a small gap: a large eps bridges it.
    auto A = IntervalUnion({{0.0, 0.45}, {0.55, 1.0}});
    auto r = epsilon_dilate(A, 0.5);
    CHECK(r.dilated.size() == 1);
    // The bridged set must contain everything the per-component dilation has.
    auto lone = epsilon_dilate(IntervalUnion::single(0, 0.45), 0.5);
    CHECK(lone.dilated.subset_of(r.dilated));
}

TEST_CASE("epsilon_dilate agrees with the membership oracle") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> ed(0.05, 0.8);
    for (int trial = 0; trial < 12; ++trial) {
        auto A = random_union(rng);
        const double eps = ed(rng);
        auto exact = epsilon_dilate(A, eps).dilated;
        const double lo = exact.components().front().lo - 0.4;
        const double hi = exact.components().back().hi + 0.4;
        for (double x = lo; x <= hi; x += 1e-3) {
            const bool grid = dilation_membership(A, eps, x);
            const bool inx = exact.contains(x);
            if (grid == inx) continue;
            double dist = kInf;
            for (const auto& c : exact.components())
                dist = std::min({dist, std::abs(x - c.lo), std::abs(x - c.hi)});
            CHECK(dist <= 1e-3);
        }
    }
}

TEST_CASE("grid fallback tracks the exact dilation") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> ed(0.1, 0.7);
    for (int trial = 0; trial < 6; ++trial) {
        auto A = random_union(rng);
        const double eps = ed(rng);
        auto exact = epsilon_dilate(A, eps);
        auto grid = epsilon_dilate_grid(A, eps, 1e-3);
        CHECK(exact.exact);
        CHECK_FALSE(grid.exact);
        REQUIRE(grid.dilated.size() == exact.dilated.size());
        for (std::size_t i = 0; i < grid.dilated.size(); ++i) {
            CHECK(std::abs(grid.dilated.components()[i].lo -
                           exact.dilated.components()[i].lo) <= 2e-3);
            CHECK(std::abs(grid.dilated.components()[i].hi -
                           exact.dilated.components()[i].hi) <= 2e-3);
        }
    }
}

TEST_CASE("dilation monotonicity properties") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ed(0.05, 0.8);
    for (int trial = 0; trial < 60; ++trial) {
        auto A = random_union(rng);
        auto B = IntervalUnion::unite(A, random_union(rng));
        const double e1 = ed(rng);
        const double e2 = std::min(0.95, e1 + 0.1);
        auto Ae1 = epsilon_dilate(A, e1).dilated;
        CHECK(A.subset_of(Ae1));
        CHECK(Ae1.subset_of(epsilon_dilate(A, e2).dilated));
        CHECK(Ae1.subset_of(epsilon_dilate(B, e1).dilated));
        auto C = random_union(rng);
        auto ACe = epsilon_dilate(IntervalUnion::unite(A, C), e1).dilated;
        CHECK(IntervalUnion::unite(Ae1, epsilon_dilate(C, e1).dilated)
                  .subset_of(ACe));
    }
}

TEST_CASE("dilation_area: closed forms") {
    auto expd = preset_density("exponential");
    CHECK(dilation_area(expd, IntervalUnion::single(0, 1)) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(dilation_area(expd, IntervalUnion()) == 0.0);

    auto g = preset_density("gaussian:1");
    const double alpha = 0.6744897501960817; // third normal quartile
    const double want = 2.0 / std::sqrt(2.0 * M_PI) *
                        std::exp(-0.5 * alpha * alpha) * 2.0 * alpha;
    CHECK(dilation_area(g, IntervalUnion::single(-alpha, alpha)) ==
          doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("dilation_area_fd is an independent oracle") {
    auto expd = preset_density("exponential");
    CHECK(dilation_area_fd(expd, IntervalUnion::single(0, 1)) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-4));
    auto u = preset_density("uniform:1");
    CHECK(dilation_area_fd(u, IntervalUnion::single(0.4, 0.6)) ==
          doctest::Approx(0.4).epsilon(1e-6));
    CHECK(dilation_area_fd(u, IntervalUnion()) == 0.0);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> qd(0.05, 0.95);
    for (const char* name : {"gaussian:1", "exponential", "s-concave:-1"}) {
        auto mu = preset_density(name);
        for (int i = 0; i < 12; ++i) {
            double u1 = qd(rng), u2 = qd(rng);
            if (u1 > u2) std::swap(u1, u2);
            if (u2 - u1 < 0.02) u2 = std::min(0.95, u1 + 0.02);
            auto A = IntervalUnion::single(mu.quantile(u1), mu.quantile(u2));
            const double closed = dilation_area(mu, A);
            const double fd = dilation_area_fd(mu, A);
            CHECK(std::abs(closed - fd) <= 1e-3 * std::max(closed, 1e-9));
        }
    }
}

TEST_CASE("exponential extremal family") {
    auto expd = preset_density("exponential");
    for (double a : {0.3, std::log(2.0), 1.7}) {
        CHECK(dilation_area(expd, IntervalUnion::single(0, a)) ==
              doctest::Approx(a * std::exp(-a)).epsilon(1e-12));
        for (double e : {0.1, 0.5, 0.7}) {
            const double m = measure(
                expd, epsilon_dilate(IntervalUnion::single(0, a), e).dilated);
            CHECK(m == doctest::Approx(1.0 - std::exp(-a / (1.0 - e)))
                           .epsilon(1e-9));
            const double theta = 1.0 - std::exp(-a);
            CHECK(m == doctest::Approx(model::s_model_epsilon_profile(
                                           model::SConcaveParam(0.0), e, theta))
                           .epsilon(1e-8));
        }
    }
}

TEST_CASE("Klartag dilation bound holds on random unions") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> ed(0.05, 0.7);
    auto expd = preset_density("exponential");   // CD(0, inf)
    auto sc = preset_density("s-concave:-1");    // CD(0, -1)
    for (int i = 0; i < 25; ++i) {
        auto A0 = random_union(rng);
        // shift into the positive axis where these measures live
        std::vector<numerics::Interval> comps;
        for (auto c : A0.components()) comps.push_back({c.lo + 3.0, c.hi + 3.0});
        IntervalUnion A(std::move(comps));
        const double e = ed(rng);
        auto Ae = epsilon_dilate(A, e).dilated;
        {
            const double m = measure(expd, A), me = measure(expd, Ae);
            if (me < 1.0)
                CHECK(1.0 - m >= std::pow(1.0 - me, 1.0 - e) - 1e-9);
        }
        {
            const double N = -1.0;
            const double m = measure(sc, A), me = measure(sc, Ae);
            if (me < 1.0) {
                const double rhs = std::pow(
                    (1.0 - e) * std::pow(1.0 - me, 1.0 / N) + e, N);
                CHECK(1.0 - m >= rhs - 1e-9);
            }
        }
    }
}

TEST_CASE("check_sinh_conditions") {
    CHECK(check_sinh_conditions(preset_density("gaussian:1")).pass);
    CHECK(check_sinh_conditions(preset_density("exponential")).pass);
    auto rep = check_sinh_conditions(cubic_density());
    CHECK_FALSE(rep.pass);
    CHECK(rep.margin < 0.0);
}

TEST_CASE("check_kn_convexity") {
    CHECK(check_kn_convexity(preset_density("gaussian:1"), 1.0, kInf).pass);
    CHECK(check_kn_convexity(preset_density("exponential"), 0.0, kInf).pass);
    CHECK_FALSE(check_kn_convexity(preset_density("exponential"), 0.0, 2.0).pass);
    // model densities saturate their own comparison
    CHECK(check_kn_convexity(preset_density("s-concave:-1"), 0.0, -1.0).pass);
    CHECK(check_kn_convexity(preset_density("sin-power:1,3"), 1.0, 3.0).pass);
    CHECK_THROWS_AS(check_kn_convexity(preset_density("exponential"), 0.0, 0.5),
                    DomainError);
}

TEST_CASE("split_point") {
    auto u = preset_density("uniform:1");
    CHECK(split_point(u, IntervalUnion::single(0.25, 0.75), 0.5) ==
          doctest::Approx(0.5).epsilon(1e-9));
    // A touching the left support endpoint: returns that endpoint.
    CHECK(split_point(u, IntervalUnion::single(0.0, 0.5), 0.5) == 0.0);

    auto expd = preset_density("exponential");
    auto A = IntervalUnion::single(std::log(4.0 / 3.0), std::log(4.0));
    REQUIRE(measure(expd, A) == doctest::Approx(0.5).epsilon(1e-9));
    const double xi = split_point(expd, A, 0.5);
    const double below = expd.cdf(xi);
    const double minus = (below - expd.cdf(std::log(4.0 / 3.0))) / below;
    CHECK(minus == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("borell_lemma_check") {
    auto g = preset_density("gaussian:1");
    const double k_half = g.quantile(0.75); // mu([-k,k]) = 0.5
    auto r1 = borell_lemma_check(g, k_half, 1.0);
    CHECK(r1.pass);
    CHECK(r1.lhs == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(r1.rhs == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(borell_lemma_check(g, 1.0, 3.0).pass);
    CHECK(borell_lemma_check(double_exponential(), 1.0, 2.0).pass);
}

TEST_CASE("brute_force_profile") {
    auto expd = preset_density("exponential");
    CHECK(brute_force_profile(expd, 0.5, ProfileMode::Area, 1, 300) ==
          doctest::Approx(-0.5 * std::log(0.5)).epsilon(1e-4));
    CHECK(brute_force_profile(expd, 0.0, ProfileMode::Area, 1, 300) == 0.0);
    CHECK(brute_force_profile(expd, 0.0, ProfileMode::Epsilon, 1, 300, 0.3) ==
          0.0);

    auto g = preset_density("gaussian:1");
    const double alpha = 0.6744897501960817;
    const double gp = 4.0 / std::sqrt(2.0 * M_PI) *
                      std::exp(-0.5 * alpha * alpha) * alpha;
    CHECK(std::abs(brute_force_profile(g, 0.5, ProfileMode::Area, 1, 800) - gp)
          <= 1e-3);

    CHECK_THROWS_AS(brute_force_profile(expd, 0.5, ProfileMode::Area, 1, 50),
                    DomainError);
    CHECK_THROWS_AS(brute_force_profile(expd, 0.5, ProfileMode::Area, 5, 300),
                    DomainError);
}

TEST_CASE("brute force minimizers sit where the theory says") {
    // Gaussian: equal log-density endpoints (the symmetric interval).
    auto g = preset_density("gaussian:1");
    auto r = brute_force_profile_argmin(g, 0.4, ProfileMode::Area, 1, 800);
    REQUIRE(r.argmin.size() == 1);
    const auto c = r.argmin.components()[0];
    CHECK(std::abs(g.psi(c.lo) - g.psi(c.hi)) < 2e-2);
    // Exponential: the minimizer hugs the support boundary.
    auto expd = preset_density("exponential");
    auto re = brute_force_profile_argmin(expd, 0.4, ProfileMode::Area, 1, 800);
    CHECK(re.argmin.components()[0].lo == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("circle ball dilation") {
    CHECK(circle_ball_dilation(M_PI / 8.0, 0.5) ==
          doctest::Approx(3.0 * M_PI / 8.0));
    CHECK(circle_ball_dilation(M_PI / 3.0, 0.5) ==
          doctest::Approx(M_PI / 3.0 + M_PI / 2.0));
    CHECK(circle_ball_dilation(0.7, 0.0) == doctest::Approx(0.7));
    CHECK_THROWS_AS(circle_ball_dilation(3.5, 0.5), DomainError);
    for (double r : {0.2, 1.0, 2.5})
        for (double e : {0.1, 0.4, 0.7}) CHECK(circle_ball_verify(r, e).pass);
}
