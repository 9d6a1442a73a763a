#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "dilation/model.hpp"
#include "dilation/profiles.hpp"
#include "dilation/errors.hpp"

using namespace dilation;
using namespace dilation::profiles;
using model::CurvatureTriple;
using numerics::kInf;

TEST_CASE("flat_profile: examples") {
    CHECK(flat_profile([](double t) { return std::exp(-t); }, {0.0, kInf},
                       0.5) ==
          doctest::Approx(-0.5 * std::log(0.5)).epsilon(1e-9));
    CHECK(flat_profile([](double t) { return -t; }, {-1.0, 0.0}, 0.5) ==
          doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-9));
    for (double th : {0.2, 0.5, 0.9})
        CHECK(flat_profile([](double) { return 1.0; }, {0.0, 3.0}, th) ==
              doctest::Approx(th).epsilon(1e-10));
}

TEST_CASE("flat_profile: boundary thetas") {
    CHECK(flat_profile([](double) { return 1.0; }, {0.0, 1.0}, 0.0) == 0.0);
    CHECK(flat_profile([](double) { return 1.0; }, {0.0, 1.0}, 1.0) ==
          doctest::Approx(1.0));
    // theta = 1 on an infinite window: the genuine limit (vanishes here).
    CHECK(flat_profile([](double t) { return std::exp(-t); }, {0.0, kInf},
                       1.0) == doctest::Approx(0.0).epsilon(1e-5));
}

TEST_CASE("flat_profile: errors") {
    CHECK_THROWS_AS(flat_profile([](double) { return 1.0; }, {0.0, kInf}, 0.5),
                    DomainError); // non-integrable
    CHECK_THROWS_AS(
        flat_profile([](double t) { return -t; }, {0.0, 1.0}, 0.5),
        DomainError); // negative density
}

TEST_CASE("flat_profile: scale invariance") {
    for (double lambda : {0.5, 2.0}) {
        const double a = flat_profile(
            [](double t) { return std::exp(-t * t / 2); }, {0.3, kInf}, 0.4);
        const double b = flat_profile(
            [lambda](double t) {
                return std::exp(-(lambda * t) * (lambda * t) / 2);
            },
            {0.3 / lambda, kInf}, 0.4);
        CHECK(std::abs(a - b) < 1e-10);
        const double c = flat_profile([](double t) { return -t; },
                                      {-1.0, 0.0}, 0.7);
        const double d = flat_profile(
            [lambda](double t) { return -lambda * t; },
            {-1.0 / lambda, 0.0}, 0.7);
        CHECK(std::abs(c - d) < 1e-10);
    }
}

TEST_CASE("closed-form cases and endpoints") {
    CurvatureTriple c3(0, kInf, kInf), c5(0, 2, kInf), c8(0, -2, kInf);
    CHECK(cdd_profile_case(c3, 0.5) ==
          doctest::Approx(-0.5 * std::log(0.5)).epsilon(1e-12));
    CHECK(cdd_profile_case(c5, 0.5) ==
          doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
    for (auto* t : {&c3, &c5, &c8}) {
        CHECK(cdd_profile_case(*t, 0.0) == 0.0);
        CHECK(cdd_profile_case(*t, 1.0) == 0.0);
        CHECK(cdd_profile_general(*t, 0.0) == 0.0);
        CHECK(cdd_profile_general(*t, 1.0) == 0.0);
    }
    CHECK_THROWS_AS(cdd_profile_case(CurvatureTriple(-1, 2, kInf), 0.5),
                    ExcludedTripleError);
}

TEST_CASE("N = 0 profiles degenerate to zero") {
    // The window mass of sinh^{-1}/sin^{-1} diverges logarithmically at the
    // bump edge; the shift infimum vanishes identically.
    CurvatureTriple c7(0.5, 0.0, 1.5);
    CurvatureTriple c9(-0.5, 0.0, 1.0);
    for (double th : {0.15, 0.5, 0.85}) {
        CHECK(cdd_profile_case(c7, th) == 0.0);
        CHECK(cdd_profile_general(c7, th) == 0.0);
        CHECK(cdd_profile_case(c9, th) == 0.0);
    }
}

TEST_CASE("Case 4 at the unshifted window is an upper bound") {
    CurvatureTriple t(1, 2, kInf);
    const double v = cdd_profile_case(t, 0.5);
    CHECK(v <= M_PI / 4.0 + 1e-9);
    CHECK(v > 0.0);
}

TEST_CASE("K = 0 ordering in 1/N at theta = 1/2") {
    // closed-form evaluations; non-decreasing in 1/N
    const double n2 = cdd_profile_case(CurvatureTriple(0, 2, kInf), 0.5);
    const double n5 = cdd_profile_case(CurvatureTriple(0, 5, kInf), 0.5);
    const double ninf = cdd_profile_case(CurvatureTriple(0, kInf, kInf), 0.5);
    const double nm5 = cdd_profile_case(CurvatureTriple(0, -5, kInf), 0.5);
    const double nm2 = cdd_profile_case(CurvatureTriple(0, -2, kInf), 0.5);
    CHECK(n2 == doctest::Approx(0.4142135623730951).epsilon(1e-9));
    CHECK(n5 == doctest::Approx(0.3717458874925872).epsilon(1e-9));
    CHECK(ninf == doctest::Approx(0.3465735902799726).epsilon(1e-9));
    CHECK(nm5 == doctest::Approx(0.3236235917596897).epsilon(1e-9));
    CHECK(nm2 == doctest::Approx(0.2928932188134524).epsilon(1e-9));
    CHECK(n2 > n5);
    CHECK(n5 > ninf);
    CHECK(ninf > nm5);
    CHECK(nm5 > nm2);
}

TEST_CASE("balance solution equalizes both terms") {
    CurvatureTriple t(1, 2, kInf);
    for (double a : {0.4, 1.0, 2.5}) {
        auto s = cdd_balance_solve(t, 0.5, a);
        const double Jp = model::j_integral(s.H, t.K, t.N, 0.0, s.b);
        const double Jm = model::j_integral(s.H, t.K, t.N, -a, 0.0);
        const double t1 = a * 0.5 / Jp;
        const double t2 = a * 0.5 / Jm;
        CHECK(std::abs(t1 - t2) <= 1e-8 * std::max(t1, t2));
        CHECK(s.common_value == doctest::Approx(std::max(t1, t2)));
    }
}

TEST_CASE("gaussian_profile") {
    CHECK(gaussian_profile(0.0) == 0.0);
    CHECK(gaussian_profile(1.0) == 0.0);
    const double alpha = 0.6744897501960817;
    const double want =
        4.0 / std::sqrt(2.0 * M_PI) * std::exp(-0.5 * alpha * alpha) * alpha;
    CHECK(gaussian_profile(0.5) == doctest::Approx(want).epsilon(1e-10));
    // the Gaussian tail kills f(alpha) alpha
    CHECK(gaussian_profile(0.999) < gaussian_profile(0.99));
    CHECK(gaussian_profile(0.9999) < 0.005);
    // equals twice the half-line flat profile
    FlatDensity half([](double t) { return -0.5 * t * t; }, 0.0, kInf);
    for (double th : {0.2, 0.5, 0.8})
        CHECK(gaussian_profile(th) ==
              doctest::Approx(2.0 * half.profile(th)).epsilon(1e-9));
}

TEST_CASE("check_concavity") {
    std::vector<double> thetas;
    for (int i = 1; i < 50; ++i) thetas.push_back(i / 50.0);
    auto exp_table = sample_profile(
        [](double th) { return k0_ninf_profile(th); }, thetas,
        ProfileMethod::Flat, "exp closed form");
    CHECK(check_concavity(exp_table).pass);

    FlatDensity gauss([](double t) { return -0.5 * t * t; }, 0.0, kInf);
    auto gauss_table =
        sample_profile([&](double th) { return gauss.profile(th); }, thetas,
                       ProfileMethod::Flat, "half gaussian");
    CHECK(check_concavity(gauss_table).pass);

    auto control = sample_profile(
        [](double th) { return th * (1.0 - th) * (1.0 - th); }, thetas,
        ProfileMethod::Flat, "control");
    CHECK_FALSE(check_concavity(control).pass);
}

TEST_CASE("check_shift_monotonicity") {
    // sin^{N-1} on (0, pi), N = 2: ratio decreasing, profile non-increasing.
    std::vector<double> xs;
    for (int i = 4; i <= 12; ++i) xs.push_back(M_PI * i / 16.0);
    auto rep = check_shift_monotonicity(
        [](double t) { return std::sin(t); }, 0.0, xs, 0.5);
    CHECK(rep.pass);
    CHECK(rep.params["direction"] == -1);

    // power density t^{N-1}, N = -1, window anchored right of the pole:
    // ratio decreasing independently of the anchor.
    std::vector<double> xs2;
    for (int i = 2; i <= 10; ++i) xs2.push_back(1.0 + 0.5 * i);
    auto rep2 = check_shift_monotonicity(
        [](double t) { return 1.0 / (t * t); }, 1.0, xs2, 0.5);
    CHECK(rep2.pass);
    CHECK(rep2.params["direction"] == -1);

    // constant density: profile constant in x, both directions hold.
    auto rep3 = check_shift_monotonicity([](double) { return 1.0; }, 0.0,
                                         {1.0, 2.0, 3.0, 4.0}, 0.5);
    CHECK(rep3.pass);
}

TEST_CASE("check_boundary_monotone") {
    auto expd = model::preset_density("exponential");
    auto rep = check_boundary_monotone(expd, {0.5, 1.0, 2.0});
    CHECK(rep.pass);
    CHECK(rep.params["direction"] == -1);

    // density 2t on [0,1]: mu*([0,c]) = 2c^2 >= c^2 = mu([0,c]).
    measure1d::Density1D inc({0.0, 1.0},
                             [](double t) { return -std::log(2.0 * t); },
                             [](double t) { return -1.0 / t; }, std::nullopt,
                             {}, "2t");
    auto rep2 = check_boundary_monotone(inc, {0.25, 0.5, 0.75});
    CHECK(rep2.pass);
    CHECK(rep2.params["direction"] == 1);

    // constant density: equality throughout
    auto rep3 = check_boundary_monotone(model::preset_density("uniform:1"),
                                        {0.25, 0.5, 0.75});
    CHECK(rep3.pass);
    CHECK(std::abs(rep3.margin) < 1e-9);
}

TEST_CASE("profile table CSV") {
    ProfileTable t;
    t.descriptor = "demo";
    t.thetas = {0.25, 0.5};
    t.values = {0.1234567891234, 0.2};
    t.method = ProfileMethod::CddCase;
    std::ostringstream os;
    t.to_csv(os);
    CHECK(os.str() == "theta,value,method\n"
                      "0.25,0.123456789,cdd-case\n"
                      "0.5,0.2,cdd-case\n");
    ProfileTable bad = t;
    bad.values.pop_back();
    CHECK_THROWS_AS(bad.validate(), DomainError);
}
