#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dilation/model.hpp"
#include "dilation/errors.hpp"

using namespace dilation;
using namespace dilation::model;
using numerics::kInf;

TEST_CASE("s_kappa / c_kappa branches") {
    CHECK(s_kappa(0.0, 3.0) == doctest::Approx(3.0));
    CHECK(c_kappa(1.0, M_PI) == doctest::Approx(-1.0));
    CHECK(s_kappa(-1.0, 1.0) == doctest::Approx(std::sinh(1.0)).epsilon(1e-12));
    CHECK(c_kappa(-1.0, 1.0) == doctest::Approx(std::cosh(1.0)).epsilon(1e-12));
    CHECK(s_kappa(4.0, 0.5) == doctest::Approx(std::sin(1.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("s_kappa / c_kappa smooth across kappa = 0") {
    for (double t : {0.1, 1.0, 7.0}) {
        CHECK(std::abs(s_kappa(1e-12, t) - s_kappa(0.0, t)) < 1e-10);
        CHECK(std::abs(s_kappa(-1e-12, t) - s_kappa(0.0, t)) < 1e-10);
        CHECK(std::abs(c_kappa(1e-12, t) - c_kappa(0.0, t)) < 1e-10);
    }
}

TEST_CASE("j_eval: the four branches") {
    CHECK(j_eval(0.0, 0.0, kInf, 5.0) == doctest::Approx(1.0));
    for (double t : {-0.5, 0.0, 0.3, 2.0}) {
        CHECK(j_eval(1.0, 0.0, 2.0, t) ==
              doctest::Approx(std::max(1.0 + t, 0.0)));
    }
    CHECK(j_eval(0.0, 1.0, 3.0, std::sqrt(2.0) * M_PI / 2.0) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(j_eval(0.0, 0.0, 1.0, 2.0) == 1.0);
    CHECK(std::isinf(j_eval(0.0, 1.0, 1.0, 2.0)));
    // N < 1 clamp branch is +inf, a value rather than an error:
    // here base = cosh - (5/3) sinh < 0 at t = 3.
    CHECK(std::isinf(j_eval(5.0, 1.0, -2.0, 3.0)));
}

TEST_CASE("j_eval invariants") {
    const double Hs[] = {-2.0, 0.0, 1.5};
    const double Ks[] = {-1.0, 0.0, 2.0};
    const double Ns[] = {-3.0, -0.5, 2.0, 7.0, kInf};
    for (double H : Hs)
        for (double K : Ks)
            for (double N : Ns) {
                if (N == 1.0) continue;
                CHECK(j_eval(H, K, N, 0.0) == doctest::Approx(1.0));
                // nonnegative everywhere; continuity in t; log cross-check
                for (double t : {-0.7, 0.4, 1.2}) {
                    const double v = j_eval(H, K, N, t);
                    CHECK(v >= 0.0);
                    const double vn = j_eval(H, K, N, t + 1e-9);
                    if (std::isfinite(v) && std::isfinite(vn) && v > 0)
                        CHECK(std::abs(v - vn) <= 1e-6 * (1.0 + v));
                    if (!std::isinf(N) && std::isfinite(v) && v > 0) {
                        const double base =
                            c_kappa(K / (N - 1.0), t) +
                            H / (N - 1.0) * s_kappa(K / (N - 1.0), t);
                        CHECK(std::log(v) ==
                              doctest::Approx((N - 1.0) * std::log(base))
                                  .epsilon(1e-12));
                    }
                }
            }
}

TEST_CASE("j_positivity_window brackets the sign change") {
    for (double H : {-3.0, -0.5, 0.5, 3.0})
        for (double K : {-2.0, -0.5, 0.5, 2.0})
            for (double N : {-2.0, 3.0}) {
                auto w = j_positivity_window(H, K, N);
                const double dlt = K / (N - 1.0);
                auto base = [&](double t) {
                    return c_kappa(dlt, t) + H / (N - 1.0) * s_kappa(dlt, t);
                };
                CHECK(base(0.0) > 0.0);
                if (std::isfinite(w.lo)) {
                    CHECK(std::abs(base(w.lo)) < 1e-9);
                    CHECK(base(w.lo + 1e-6 * (1 + std::abs(w.lo))) > 0.0);
                }
                if (std::isfinite(w.hi)) {
                    CHECK(std::abs(base(w.hi)) < 1e-9);
                    CHECK(base(w.hi - 1e-6 * (1 + std::abs(w.hi))) > 0.0);
                }
            }
}

TEST_CASE("CurvatureTriple classification") {
    CHECK(CurvatureTriple(1, kInf, kInf).tag() == CaseTag::Case1);
    CHECK(CurvatureTriple(1, kInf, 1).tag() == CaseTag::Case2);
    CHECK(CurvatureTriple(-1, kInf, 1).tag() == CaseTag::Case2);
    CHECK(CurvatureTriple(0, kInf, 5).tag() == CaseTag::Case3);
    CHECK(CurvatureTriple(1, 2, kInf).tag() == CaseTag::Case4);
    CHECK(CurvatureTriple(0, 2, kInf).tag() == CaseTag::Case5);
    CHECK(CurvatureTriple(-1, 2, 1).tag() == CaseTag::Case6);
    CHECK(CurvatureTriple(1, -2, 1).tag() == CaseTag::Case7);
    CHECK(CurvatureTriple(1, 0, kInf).tag() == CaseTag::Case7);
    CHECK(CurvatureTriple(0, -2, kInf).tag() == CaseTag::Case8);
    CHECK(CurvatureTriple(-1, -2, 1).tag() == CaseTag::Case9);

    // Exclusions: the three discontinuity classes plus N = 1 with K != 0
    // and the Case-9 diameter ceiling.
    CHECK(CurvatureTriple(-1, 2, kInf).excluded());
    CHECK(CurvatureTriple(0, 0, 2).excluded());
    CHECK(CurvatureTriple(1, 0.5, 1).excluded());
    CHECK(CurvatureTriple(1, 1, 1).excluded());
    CHECK_FALSE(CurvatureTriple(0, 1, 1).excluded());
    CHECK(CurvatureTriple(-1, -2, 10).excluded()); // D >= pi/sqrt(delta)
    CHECK_THROWS_AS(CurvatureTriple(-1, 2, kInf).require_valid(),
                    ExcludedTripleError);
    CHECK_THROWS_AS(CurvatureTriple(1, 2, 0.0), DomainError);
}

TEST_CASE("s-concave model density") {
    // s = 1: uniform on [0,1].
    auto u = s_model_density(SConcaveParam(1.0));
    CHECK(u.support().hi == doctest::Approx(1.0));
    CHECK(u.density(0.5) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(u.normalization() == doctest::Approx(1.0).epsilon(1e-8));

    // s = 0: exponential.
    auto e = s_model_density(SConcaveParam(0.0));
    CHECK(e.cdf(std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-9));

    // s = -1: (1+x)^{-2}, already a probability density.
    auto p = s_model_density(SConcaveParam(-1.0));
    CHECK(p.normalization() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(p.density(1.0) == doctest::Approx(0.25).epsilon(1e-9));

    for (double s : {0.7, 0.3, -0.5, -3.0}) {
        CHECK(s_model_density(SConcaveParam(s)).normalization() ==
              doctest::Approx(1.0).epsilon(1e-8));
    }
    CHECK_THROWS_AS(SConcaveParam(1.5), DomainError);
}

TEST_CASE("s-concave model epsilon profile") {
    SConcaveParam s0(0.0);
    CHECK(s_model_epsilon_profile(s0, 0.5, 0.5) == doctest::Approx(0.75));
    CHECK(s_model_epsilon_profile(SConcaveParam(-1.0), 0.0, 0.37) ==
          doctest::Approx(0.37));
    CHECK(s_model_epsilon_profile(s0, 0.8, 0.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(s_model_epsilon_profile(s0, 1.0, 0.5), DomainError);

    // Monotone in theta and eps.
    for (double s : {0.5, 0.0, -1.0}) {
        SConcaveParam sp(s);
        double prev = -1.0;
        for (double th = 0.0; th <= 1.0; th += 0.1) {
            const double v = s_model_epsilon_profile(sp, 0.3, th);
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
        prev = -1.0;
        for (double e = 0.0; e < 1.0; e += 0.1) {
            const double v = s_model_epsilon_profile(sp, e, 0.4);
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("epsilon profile derivative at eps = 0 matches the area profile") {
    // d/deps at 0 equals -N(1-th-(1-th)^{1-1/N}) with N = 1/s.
    for (double s : {0.5, 0.25, -1.0, -0.5}) {
        SConcaveParam sp(s);
        const double N = 1.0 / s;
        for (double th : {0.2, 0.5, 0.8}) {
            const double h = 1e-5;
            const double fd =
                (s_model_epsilon_profile(sp, h, th) - th) / h;
            const double want =
                -N * (1.0 - th - std::pow(1.0 - th, 1.0 - 1.0 / N));
            CHECK(fd == doctest::Approx(want).epsilon(1e-4));
        }
    }
    // s = 0 limit: -(1-th)log(1-th).
    for (double th : {0.2, 0.5, 0.8}) {
        const double fd =
            (s_model_epsilon_profile(SConcaveParam(0.0), 1e-5, th) - th) / 1e-5;
        CHECK(fd == doctest::Approx(-(1 - th) * std::log(1 - th)).epsilon(1e-4));
    }
}

TEST_CASE("presets parse and normalize") {
    for (const char* spec :
         {"exponential", "gaussian:1", "s-concave:-1", "power:3", "power:-2",
          "sin-power:1,3", "sinh-power:1,-2", "sinh-power:-1,2",
          "cosh-power:-1,3", "cosh-power:1,-2", "uniform:2"}) {
        auto mu = preset_density(spec);
        CHECK(mu.cdf(mu.quantile(0.37)) == doctest::Approx(0.37).epsilon(1e-8));
    }
    CHECK_THROWS_AS(preset_density("nope"), DomainError);
    CHECK_THROWS_AS(preset_density("gaussian:-1"), DomainError);
    CHECK_THROWS_AS(preset_density("power:0.5"), DomainError);
}
