#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>
#include <random>

#include "dilation/entropy.hpp"
#include "dilation/errors.hpp"
#include "dilation/model.hpp"

using namespace dilation;
using namespace dilation::entropy;
using model::preset_density;
using numerics::kInf;

namespace {
constexpr double kEulerGamma = 0.5772156649015329;

TestFunction identity() {
    return TestFunction::monotone([](double x) { return x; });
}

TestFunction indicator_upper_half() {
    // 1 on (1/2, 1], 0 on [0, 1/2]
    return TestFunction::piecewise(
        [](double x) { return x > 0.5 ? 1.0 : 0.0; }, {0.5});
}
} // namespace

TEST_CASE("sublevel sets") {
    auto mu = preset_density("exponential");
    auto f = identity();
    auto s = f.sublevel(mu, 2.0);
    REQUIRE(s.size() == 1);
    CHECK(s.components()[0].lo == doctest::Approx(0.0));
    CHECK(s.components()[0].hi == doctest::Approx(2.0).epsilon(1e-9));
    // large lambda: crossing found far beyond the quantile proxy
    auto s2 = f.sublevel(mu, 75.0);
    CHECK(s2.components()[0].hi == doctest::Approx(75.0).epsilon(1e-6));

    auto g = preset_density("gaussian:1");
    auto absf = TestFunction::unimodal([](double x) { return std::abs(x); },
                                       0.0);
    auto s3 = absf.sublevel(g, 1.5);
    REQUIRE(s3.size() == 1);
    CHECK(s3.components()[0].lo == doctest::Approx(-1.5).epsilon(1e-8));
    CHECK(s3.components()[0].hi == doctest::Approx(1.5).epsilon(1e-8));

    // bounded f: beyond its maximum the sublevel is the whole support
    auto u = preset_density("uniform:1");
    auto ind = indicator_upper_half();
    auto s4 = ind.sublevel(u, 0.3);
    REQUIRE(s4.size() == 1);
    CHECK(s4.components()[0].hi == doctest::Approx(0.5).epsilon(1e-8));
    auto s5 = ind.sublevel(u, 2.0);
    CHECK(measure1d::measure(u, s5) == doctest::Approx(1.0));
}

TEST_CASE("measured_remez: linear statistic of the exponential") {
    auto mu = preset_density("exponential");
    auto f = identity();
    for (double s : {1.5, 2.0, 4.0})
        CHECK(measured_remez(mu, f, s).C == doctest::Approx(s).epsilon(1e-7));
    CHECK(measured_remez(mu, f, 1.0).C == 1.0);
    // continuity at s = 1 and monotonicity in s
    CHECK(measured_remez(mu, f, 1.0001).C ==
          doctest::Approx(1.0001).epsilon(1e-6));
    double prev = 1.0;
    auto g = preset_density("gaussian:1");
    auto absf =
        TestFunction::unimodal([](double x) { return std::abs(x); }, 0.0);
    for (double s : {1.001, 1.1, 1.5, 2.0, 3.0}) {
        const double c = measured_remez(g, absf, s).C;
        CHECK(c >= prev - 1e-9);
        prev = c;
    }
}

TEST_CASE("measured_remez: indicators have no finite constant") {
    auto u = preset_density("uniform:1");
    auto est = measured_remez(u, indicator_upper_half(), 1.5);
    CHECK(std::isinf(est.C));
}

TEST_CASE("remez power law and derivative") {
    auto mu = preset_density("exponential");
    CHECK(remez_derivative_at_one(mu, identity()) ==
          doctest::Approx(1.0).epsilon(1e-6));
    // u_{a f^q}(s) = u_f(s)^q
    auto f2 = TestFunction::monotone([](double x) { return 3.0 * x * x; });
    for (double s : {1.5, 2.0})
        CHECK(measured_remez(mu, f2, s).C ==
              doctest::Approx(s * s).epsilon(1e-6));
    // the probe-max surrogate sits between q u'(1) and its value at the
    // widest probe: (s^2-1)/(s-1) = s+1 gives 2.1 at s = 1.1
    const double slope2 = remez_derivative_at_one(mu, f2);
    CHECK(slope2 >= 2.0 - 1e-9);
    CHECK(slope2 <= 2.1 + 1e-9);
    // infinite branch propagates
    auto u = preset_density("uniform:1");
    CHECK(std::isinf(remez_derivative_at_one(u, indicator_upper_half())));
}

TEST_CASE("relative_entropy") {
    auto mu = preset_density("exponential");
    CHECK(relative_entropy(mu, TestFunction::monotone(
                                   [](double) { return 1.0; })) ==
          doctest::Approx(0.0).epsilon(1e-9));
    CHECK(relative_entropy(mu, identity()) ==
          doctest::Approx(1.0 - kEulerGamma).epsilon(1e-9));
    auto u = preset_density("uniform:1");
    auto rho = TestFunction::piecewise(
        [](double x) { return x <= 0.5 ? 2.0 : 0.0; }, {0.5});
    CHECK(relative_entropy(u, rho) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK_THROWS_AS(relative_entropy(u, identity()), NotNormalizedError);
}

TEST_CASE("n_entropy values and ordering") {
    auto mu = preset_density("exponential");
    auto rho = identity();
    CHECK(n_entropy(mu, TestFunction::monotone([](double) { return 1.0; }),
                    5.0) == doctest::Approx(0.0).epsilon(1e-9));
    const double um2 = n_entropy(mu, rho, -2.0);
    CHECK(um2 == doctest::Approx(2.0 - std::sqrt(M_PI)).epsilon(1e-9));
    const double ent = relative_entropy(mu, rho);
    const double u2 = n_entropy(mu, rho, 2.0);
    CHECK(um2 <= ent);
    CHECK(ent <= u2);
    CHECK(um2 >= 0.0);
    CHECK_THROWS_AS(n_entropy(mu, rho, 0.5), DomainError);
}

TEST_CASE("n_entropy converges to the relative entropy") {
    auto mu = preset_density("exponential");
    auto rho = identity();
    const double ent = relative_entropy(mu, rho);
    double prev_gap = kInf;
    for (double N : {10.0, 100.0, 1000.0}) {
        const double gap = std::abs(n_entropy(mu, rho, N) - ent);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 1e-3);
    prev_gap = kInf;
    for (double N : {-10.0, -100.0, -1000.0}) {
        const double gap = std::abs(n_entropy(mu, rho, N) - ent);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 1e-3);
}

TEST_CASE("dual functional") {
    auto mu = preset_density("exponential");
    auto rho = identity();
    for (double N : {2.0, -2.0}) {
        const double UN = n_entropy(mu, rho, N);
        auto g_star = TestFunction::monotone(
            [N](double x) { return std::pow(x, 1.0 / N); });
        CHECK(dual_functional(mu, rho, g_star, N) ==
              doctest::Approx(UN).epsilon(1e-9));
        auto ones = TestFunction::monotone([](double) { return 1.0; });
        CHECK(dual_functional(mu, rho, ones, N) ==
              doctest::Approx(0.0).epsilon(1e-9));
        CHECK(0.0 <= UN + 1e-12);
        // perturbations never beat the optimum
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> wd(0.5, 3.0);
        for (int i = 0; i < 20; ++i) {
            const double w = wd(rng);
            auto g = TestFunction::piecewise(
                [N, w](double x) {
                    return std::pow(x, 1.0 / N) *
                           (1.0 + 0.1 * std::sin(w * x));
                },
                {});
            CHECK(dual_functional(mu, rho, g, N) <= UN + 1e-8);
        }
    }
    // log dual at g = rho recovers the relative entropy exactly.
    CHECK(dual_functional(mu, rho, rho, kInf) ==
          doctest::Approx(relative_entropy(mu, rho)).epsilon(1e-9));
    auto bounded = TestFunction::monotone(
        [](double x) { return 1.0 + 0.5 * std::tanh(x - 1.0); });
    CHECK(dual_functional(mu, rho, bounded, kInf) <=
          relative_entropy(mu, rho) + 1e-9);
    // random clipped piecewise-linear phi on 64 quantile nodes never beats
    // the supremum either
    {
        const double ent = relative_entropy(mu, rho);
        auto nodes = std::make_shared<std::vector<double>>(mu.quantile_grid(64));
        std::mt19937 rng(81);
        std::uniform_real_distribution<double> vd(-3.0, 3.0);
        for (int trial = 0; trial < 12; ++trial) {
            auto vals = std::make_shared<std::vector<double>>(64);
            for (auto& v : *vals) v = std::clamp(vd(rng), -3.0, 3.0);
            auto g = TestFunction::piecewise(
                [nodes, vals](double x) {
                    auto it = std::lower_bound(nodes->begin(), nodes->end(), x);
                    if (it == nodes->begin()) return std::exp(vals->front());
                    if (it == nodes->end()) return std::exp(vals->back());
                    const std::size_t i =
                        static_cast<std::size_t>(it - nodes->begin());
                    const double t = (x - (*nodes)[i - 1]) /
                                     ((*nodes)[i] - (*nodes)[i - 1]);
                    return std::exp((1 - t) * (*vals)[i - 1] + t * (*vals)[i]);
                },
                {});
            CHECK(dual_functional(mu, rho, g, kInf) <= ent + 1e-9);
        }
    }
    // inadmissible g
    auto neg = TestFunction::monotone([](double x) { return x - 10.0; });
    CHECK_THROWS_AS(dual_functional(mu, rho, neg, 2.0), InadmissibleGError);
    auto vanishing = identity(); // inf g = 0 fails the N < -1 class
    CHECK_THROWS_AS(dual_functional(mu, rho, vanishing, -2.0),
                    InadmissibleGError);
}

TEST_CASE("coarea inequality and equality case") {
    auto mu = preset_density("exponential");
    CHECK(coarea_lhs(mu, identity()) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(coarea_lhs(mu, TestFunction::monotone([](double) { return 0.0; })) ==
          doctest::Approx(0.0));
    auto u = preset_density("uniform:1");
    CHECK(coarea_lhs(u, identity()) == doctest::Approx(0.5).epsilon(1e-6));
    // inequality: lhs <= u'(1) * int f dmu
    for (const char* name : {"exponential", "gaussian:1"}) {
        auto m = preset_density(name);
        auto f = name == std::string("gaussian:1")
                     ? TestFunction::unimodal(
                           [](double x) { return std::abs(x); }, 0.0)
                     : identity();
        const double up = remez_derivative_at_one(m, f);
        const double mean = expectation(m, f.f);
        CHECK(coarea_lhs(m, f) <= up * mean + 1e-6);
    }
}

TEST_CASE("f_epsilon and phi_f") {
    auto mu = preset_density("exponential");
    auto f = identity();
    for (double e : {0.2, 0.5}) {
        auto fe = f_epsilon(mu, f, e);
        for (double x : {0.5, 1.0, 3.0})
            CHECK(fe(x) == doctest::Approx((1.0 - e) * x).epsilon(1e-7));
    }
    auto phi = phi_f(mu, f);
    for (double x : {0.5, 2.0})
        CHECK(phi(x) == doctest::Approx(x).epsilon(1e-5));
    const double mean_phi = expectation(mu, phi.f);
    CHECK(mean_phi == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(mean_phi >= relative_entropy(mu, f) - 1e-9);

    auto c = TestFunction::monotone([](double) { return 2.0; });
    auto ce = f_epsilon(mu, c, 0.3);
    CHECK(ce(1.0) == doctest::Approx(2.0).epsilon(1e-8));
    auto cphi = phi_f(mu, c);
    CHECK(cphi(1.0) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("chebyshev polynomials and the Remez bound") {
    for (int d : {1, 2, 5, 9}) CHECK(chebyshev_T(d, 1.0) == doctest::Approx(1.0));
    CHECK(chebyshev_T(2, 2.0) == doctest::Approx(7.0));
    for (double s : {1.0, 1.5, 2.0})
        CHECK(remez_poly_bound(1, s) == doctest::Approx(2.0 * s - 1.0));
    // documented slope bound u'(1) <= 2 d^2: Richardson-extrapolate the
    // secant slope of T_d(2s-1) at s = 1
    for (int d : {1, 2, 4}) {
        auto secant = [d](double h) {
            return (remez_poly_bound(d, 1.0 + h) - 1.0) / h;
        };
        const double deriv = 2.0 * secant(5e-4) - secant(1e-3);
        CHECK(deriv == doctest::Approx(2.0 * d * d).epsilon(1e-2));
    }
}

TEST_CASE("reverse Holder") {
    auto mu = preset_density("exponential");
    auto f = identity();
    auto rep = reverse_holder_check(mu, f, 1.0, 2.0, 1.0);
    CHECK(rep.pass);
    CHECK(rep.lhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
    CHECK(rep.rhs == doctest::Approx(2.0).epsilon(1e-8));
    auto eq = reverse_holder_check(mu, f, 2.0, 2.0, 1.0);
    CHECK(eq.pass);
    CHECK(eq.lhs == doctest::Approx(eq.rhs).epsilon(1e-9));
    auto g = preset_density("gaussian:1");
    auto absf = TestFunction::unimodal([](double x) { return std::abs(x); },
                                       0.0);
    auto rg = reverse_holder_check(g, absf, 1.0, 2.0, 2.0);
    CHECK(rg.pass);
    CHECK(rg.lhs == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rg.rhs ==
          doctest::Approx(4.0 * std::sqrt(2.0 / M_PI)).epsilon(1e-8));
}

TEST_CASE("entropy_bound_check") {
    auto mu = preset_density("exponential");
    auto rep = entropy_bound_check(mu, identity(), kInf);
    CHECK(rep.pass);
    CHECK(rep.lhs == doctest::Approx(1.0 - kEulerGamma).epsilon(1e-6));
    CHECK(entropy_bound_check(mu, identity(), -2.0).pass);
    CHECK(entropy_bound_check(
              mu, TestFunction::monotone([](double) { return 1.0; }), kInf)
              .pass);
    CHECK_THROWS_AS(entropy_bound_check(mu, identity(), 2.0),
                    CurvatureViolatedError);
}
