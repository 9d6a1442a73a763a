#include "dilation/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>

#include "dilation/errors.hpp"
#include "dilation/parallel.hpp"

namespace dilation::entropy {

using measure1d::dilation_area;
using measure1d::epsilon_dilate;
using measure1d::measure;
using numerics::find_root;
using numerics::integrate;
using numerics::Interval;

TestFunction TestFunction::monotone(std::function<double(double)> f) {
    return {std::move(f), Structure::Monotone, {}};
}

TestFunction TestFunction::unimodal(std::function<double(double)> f,
                                    double flip) {
    return {std::move(f), Structure::Unimodal, {flip}};
}

TestFunction TestFunction::piecewise(std::function<double(double)> f,
                                     std::vector<double> flips) {
    std::sort(flips.begin(), flips.end());
    return {std::move(f), Structure::PiecewiseMonotone, std::move(flips)};
}

IntervalUnion TestFunction::sublevel(const Density1D& mu, double lambda,
                                     Tolerance tol) const {
    // Unbounded piece ends are probed at the 1e-12 quantile first; if the
    // piece is still inside the sublevel there, the probe grows until the
    // crossing is found or the piece is accepted as fully inside (the
    // component then keeps the true infinite endpoint).
    const double lo = mu.support().lo, hi = mu.support().hi;
    const double flo = std::isfinite(lo) ? lo : mu.quantile(1e-12);
    const double fhi = std::isfinite(hi) ? hi : mu.quantile(1.0 - 1e-12);
    std::vector<double> cuts{flo};
    for (double b : breakpoints)
        if (b > flo && b < fhi) cuts.push_back(b);
    cuts.push_back(fhi);

    // Crossing hunt on an unbounded piece: grow past the proxy endpoint.
    auto grow_cross = [&](double from, double dir) -> std::optional<double> {
        double step = 1.0 + std::abs(from);
        double prev = from;
        for (int k = 0; k < 80; ++k) {
            const double probe = prev + dir * step;
            if (f(probe) > lambda) {
                return find_root([&](double t) { return f(t) - lambda; },
                                 {std::min(prev, probe), std::max(prev, probe)},
                                 tol);
            }
            prev = probe;
            step *= 2.0;
        }
        return std::nullopt; // effectively inside all the way out
    };

    std::vector<Interval> comps;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        const double fa = f(a), fb = f(b);
        const bool in_a = fa <= lambda, in_b = fb <= lambda;
        const bool first = i == 0, last = i + 2 == cuts.size();
        if (in_a && in_b) {
            double clo = a, chi = b;
            if (first && !std::isfinite(lo)) {
                auto x = grow_cross(a, -1.0);
                clo = x ? *x : -numerics::kInf;
            }
            if (last && !std::isfinite(hi)) {
                auto x = grow_cross(b, +1.0);
                chi = x ? *x : numerics::kInf;
            }
            comps.push_back({clo, chi});
            continue;
        }
        if (!in_a && !in_b) continue; // monotone piece stays above lambda
        // One crossing inside the piece.
        const double x =
            find_root([&](double t) { return f(t) - lambda; }, {a, b}, tol);
        if (in_a) comps.push_back({a, x});
        else comps.push_back({x, b});
    }
    return IntervalUnion(std::move(comps));
}

double expectation(const Density1D& mu, const std::function<double(double)>& g,
                   Tolerance tol) {
    auto integrand = [&](double x) { return g(x) * mu.density(x); };
    return integrate(integrand, {mu.support().lo, mu.support().hi}, tol);
}

namespace {

// Least C >= 1 with mu(sublevel(lambda*C)) >= target; +inf when even huge
// constants fall short.
double least_constant(const Density1D& mu, const TestFunction& f,
                      double lambda, double target) {
    const double slack = 1e-11;
    auto mass_at = [&](double C) {
        return measure(mu, f.sublevel(mu, lambda * C));
    };
    if (mass_at(1.0) >= target - slack) return 1.0;
    double hi = 4.0;
    while (mass_at(hi) < target - slack) {
        hi *= 4.0;
        if (hi > 1e7) return kInf;
    }
    double lo = 1.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mass_at(mid) >= target - slack) hi = mid;
        else lo = mid;
        if (hi - lo < 1e-10 * hi) break;
    }
    return hi;
}

} // namespace

RemezEstimate measured_remez(const Density1D& mu, const TestFunction& f,
                             double s, LambdaGridSpec grid) {
    if (!(s >= 1.0)) throw DomainError("measured_remez: need s >= 1");
    RemezEstimate est;
    est.s = s;
    if (s == 1.0) {
        est.C = 1.0;
        return est;
    }
    const double eps = 1.0 - 1.0 / s;

    // Lambda grid: f at quantile points, breakpoint values, and midpoints
    // between consecutive distinct values (catches jumps of step functions).
    std::vector<double> lambdas;
    for (int j = 1; j < grid.resolution; ++j) {
        const double x = mu.quantile(static_cast<double>(j) / grid.resolution);
        const double v = f(x);
        if (v > 0.0 && std::isfinite(v)) lambdas.push_back(v);
    }
    for (double b : f.breakpoints) {
        const double v = f(b);
        if (v > 0.0 && std::isfinite(v)) lambdas.push_back(v);
    }
    std::sort(lambdas.begin(), lambdas.end());
    lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
    {
        std::vector<double> mids;
        for (std::size_t i = 0; i + 1 < lambdas.size(); ++i)
            if (lambdas[i + 1] > lambdas[i] * (1.0 + 1e-9))
                mids.push_back(0.5 * (lambdas[i] + lambdas[i + 1]));
        lambdas.insert(lambdas.end(), mids.begin(), mids.end());
        std::sort(lambdas.begin(), lambdas.end());
    }
    if (lambdas.empty()) {
        est.C = 1.0; // f vanishes a.e.: sublevels are everything
        return est;
    }

    auto C_at = [&](double lambda) {
        const double target =
            measure(mu, epsilon_dilate(f.sublevel(mu, lambda), eps).dilated);
        return least_constant(mu, f, lambda, target);
    };

    // Parallel lambda sweep with a deterministic sup reduction (first
    // maximizer in grid order wins).
    std::vector<double> Cs(lambdas.size());
    parallel_for(lambdas.size(),
                 [&](std::size_t i) { Cs[i] = C_at(lambdas[i]); });
    double best = 1.0, worst_lambda = lambdas.front();
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (Cs[i] > best) {
            best = Cs[i];
            worst_lambda = lambdas[i];
        }
        if (std::isinf(Cs[i])) break;
    }
    // Refinement around the worst lambda.
    if (std::isfinite(best)) {
        for (int j = 0; j < grid.refine_points; ++j) {
            const double l = worst_lambda *
                             (0.5 + 1.5 * j / (grid.refine_points - 1.0));
            if (l <= 0) continue;
            const double c = C_at(l);
            if (c > best) {
                best = c;
                worst_lambda = l;
            }
        }
    }
    // Small-lambda escape: indicators and plateaued functions push the
    // constant like 1/lambda; probe decades below the worst point.
    if (std::isfinite(best)) {
        double prev = best;
        double l = worst_lambda;
        int growing = 0;
        for (int j = 0; j < 3; ++j) {
            l /= 10.0;
            const double c = C_at(l);
            if (std::isinf(c)) {
                growing = 3;
                break;
            }
            if (c > 4.0 * prev) ++growing;
            else growing = 0;
            prev = std::max(prev, c);
            best = std::max(best, c);
        }
        if (growing >= 3) best = kInf;
    }
    est.C = best;
    est.lambda_grid = std::move(lambdas);
    est.worst_lambda = worst_lambda;
    return est;
}

double remez_derivative_at_one(const Density1D& mu, const TestFunction& f,
                               std::vector<double> steps) {
    double sup = 0.0;
    for (double s : steps) {
        const double u = measured_remez(mu, f, s).C;
        if (std::isinf(u)) return kInf;
        sup = std::max(sup, (u - 1.0) / (s - 1.0));
    }
    return sup;
}

namespace {

void require_unit_mean(const Density1D& mu, const TestFunction& rho,
                       const Tolerance& tol) {
    const double m = expectation(mu, rho.f, tol);
    if (std::abs(m - 1.0) > 1e-8)
        throw NotNormalizedError("rho has mean " + std::to_string(m));
}

} // namespace

double relative_entropy(const Density1D& mu, const TestFunction& rho,
                        Tolerance tol) {
    require_unit_mean(mu, rho, tol);
    auto integrand = [&](double x) {
        const double r = rho(x);
        return r > 0.0 ? r * std::log(r) : 0.0;
    };
    // rho log rho can be negative; integrate the two signs separately since
    // the quadrature contract wants nonnegative integrands.
    auto pos = [&](double x) { return std::max(integrand(x), 0.0) * mu.density(x); };
    auto neg = [&](double x) { return std::max(-integrand(x), 0.0) * mu.density(x); };
    const Interval sup{mu.support().lo, mu.support().hi};
    return integrate(pos, sup, tol) - integrate(neg, sup, tol);
}

double n_entropy(const Density1D& mu, const TestFunction& rho, double N,
                 Tolerance tol) {
    if (!((N >= 1.0 && std::isfinite(N)) || N < -1.0))
        throw DomainError("n_entropy: N must lie in (-inf,-1) u [1,inf)");
    require_unit_mean(mu, rho, tol);
    const double expo = (1.0 + N) / N;
    const double I = expectation(
        mu, [&](double x) { return std::pow(rho(x), expo); }, tol);
    if (!std::isfinite(I))
        throw NonIntegrableError("n_entropy: rho^{(1+N)/N} not integrable");
    return N * (I - 1.0);
}

double dual_functional(const Density1D& mu, const TestFunction& rho,
                       const TestFunction& g, double N, Tolerance tol) {
    require_unit_mean(mu, rho, tol);
    auto samples = mu.quantile_grid(64);
    if (std::isinf(N)) {
        // log dual: int rho log g dmu - log int g dmu, phi = log g.
        for (double x : samples)
            if (!(g(x) > 0.0))
                throw InadmissibleGError("log dual needs g > 0");
        const double a = expectation(
            mu, [&](double x) { return rho(x) * std::log(g(x)); }, tol);
        const double b = expectation(mu, g.f, tol);
        return a - std::log(b);
    }
    if (!((N >= 1.0) || N < -1.0))
        throw DomainError("dual_functional: N must lie in (-inf,-1) u [1,inf)");
    if (N >= 1.0) {
        for (double x : samples)
            if (g(x) < 0.0)
                throw InadmissibleGError("dual needs g >= 0 for N >= 1");
    } else {
        double inf_g = kInf;
        for (double x : samples) inf_g = std::min(inf_g, g(x));
        if (!(inf_g > 0.0))
            throw InadmissibleGError("dual needs inf g > 0 for N < -1");
    }
    const double a =
        expectation(mu, [&](double x) { return g(x) * rho(x); }, tol);
    const double b = expectation(
        mu, [&](double x) { return std::pow(g(x), 1.0 + N); }, tol);
    if (!std::isfinite(b))
        throw InadmissibleGError("dual: g^{1+N} not integrable");
    return (1.0 + N) * a - b - N;
}

double coarea_lhs(const Density1D& mu, const TestFunction& f, Tolerance tol) {
    auto area_at = [&](double t) {
        return dilation_area(mu, f.sublevel(mu, t, tol));
    };
    return integrate(area_at, {0.0, kInf}, tol);
}

TestFunction f_epsilon(const Density1D& mu, const TestFunction& f,
                       double eps) {
    if (!(eps >= 0.0 && eps < 1.0))
        throw DomainError("f_epsilon: eps outside [0,1)");
    auto density = std::make_shared<Density1D>(mu);
    auto base = std::make_shared<TestFunction>(f);
    auto fe = [density, base, eps](double x) {
        const double fx = (*base)(x);
        if (!(fx > 0.0)) return 0.0;
        auto member = [&](double lambda) {
            const auto sub = base->sublevel(*density, lambda);
            return measure1d::dilation_membership(sub, eps, x);
        };
        double hi = fx; // x sits inside its own sublevel
        double lo = 0.0;
        for (int i = 0; i < 60; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= 0.0) break;
            if (member(mid)) hi = mid;
            else lo = mid;
        }
        return hi;
    };
    TestFunction out = f;
    out.f = fe;
    return out;
}

TestFunction phi_f(const Density1D& mu, const TestFunction& f,
                   std::vector<double> steps) {
    std::vector<TestFunction> dil;
    dil.reserve(steps.size());
    for (double e : steps) dil.push_back(f_epsilon(mu, f, e));
    auto base = std::make_shared<TestFunction>(f);
    auto stepv = std::make_shared<std::vector<double>>(std::move(steps));
    auto dilv = std::make_shared<std::vector<TestFunction>>(std::move(dil));
    auto phi = [base, stepv, dilv](double x) {
        const double fx = (*base)(x);
        double sup = 0.0;
        for (std::size_t i = 0; i < stepv->size(); ++i)
            sup = std::max(sup, (fx - (*dilv)[i](x)) / (*stepv)[i]);
        return sup;
    };
    TestFunction out = f;
    out.f = phi;
    return out;
}

double chebyshev_T(int d, double x) {
    if (d < 0) throw DomainError("chebyshev_T: d < 0");
    double t0 = 1.0, t1 = x;
    if (d == 0) return t0;
    for (int k = 1; k < d; ++k) {
        const double t2 = 2.0 * x * t1 - t0;
        t0 = t1;
        t1 = t2;
    }
    return t1;
}

double remez_poly_bound(int d, double s) {
    if (d < 1) throw DomainError("remez_poly_bound: d < 1");
    return chebyshev_T(d, 2.0 * s - 1.0);
}

VerificationReport reverse_holder_check(const Density1D& mu,
                                        const TestFunction& f, double p,
                                        double q, double uprime) {
    if (!(p > 0.0 && p <= q) || !std::isfinite(q))
        throw DomainError("reverse_holder_check: need 0 < p <= q < inf");
    auto moment = [&](double r) {
        return std::pow(
            expectation(mu,
                        [&](double x) { return std::pow(std::abs(f(x)), r); }),
            1.0 / r);
    };
    const double lhs = moment(q);
    const double rhs = std::pow(q / p, uprime) * moment(p);
    VerificationReport rep;
    rep.check = "reverse-holder";
    rep.params = {{"measure", mu.name()}, {"p", p}, {"q", q},
                  {"uprime", uprime}};
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.tol = 1e-9;
    rep.margin = rhs - lhs;
    rep.pass = lhs <= rhs * (1.0 + rep.tol);
    return rep;
}

VerificationReport entropy_bound_check(const Density1D& mu,
                                       const TestFunction& rho, double N) {
    auto cd = measure1d::check_kn_convexity(mu, 0.0, N);
    if (!cd.pass)
        throw CurvatureViolatedError("entropy_bound_check: CD(0,N) fails");
    const double uprime = remez_derivative_at_one(mu, rho);
    const double ent = std::isinf(N) ? relative_entropy(mu, rho)
                                     : n_entropy(mu, rho, N);
    VerificationReport rep;
    rep.check = "entropy-bound";
    rep.params = {{"measure", mu.name()},
                  {"N", std::isinf(N) ? 1e308 : N}};
    rep.lhs = ent;
    rep.rhs = uprime;
    rep.tol = 1e-9;
    rep.margin = uprime - ent;
    rep.pass = std::isinf(uprime) || ent <= uprime + rep.tol;
    return rep;
}

} // namespace dilation::entropy
