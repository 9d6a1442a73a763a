#include "dilation/measure1d.hpp"

#include <algorithm>
#include <cmath>

#include "dilation/errors.hpp"
#include "dilation/model.hpp"
#include "dilation/parallel.hpp"

namespace dilation::measure1d {

using numerics::find_root;
using numerics::kInf;

double measure(const Density1D& mu, const IntervalUnion& A) {
    double s = 0.0;
    for (const auto& c : A.components()) {
        const double lo = std::max(c.lo, mu.support().lo);
        const double hi = std::min(c.hi, mu.support().hi);
        if (hi > lo) s += mu.cdf(hi) - mu.cdf(lo);
    }
    return std::clamp(s, 0.0, 1.0);
}

namespace {

// Rightward sweep from anchor comps[i].lo: emits the maximal x-ranges where
// |[anchor, x] cap A| >= (1-eps)(x - anchor).
void sweep_right(const std::vector<Interval>& comps, std::size_t i, double c,
                 std::vector<Interval>& out) {
    const double anchor = comps[i].lo;
    double mass = 0.0;
    bool on = false;
    double start = 0.0;
    for (std::size_t j = i; j < comps.size(); ++j) {
        if (!on) {
            // Inside component j the condition turns on at x_on and holds
            // through the component (covered mass grows faster than c).
            const double x_on = (comps[j].lo - mass - c * anchor) / (1.0 - c);
            if (x_on <= comps[j].hi) {
                on = true;
                start = std::max(comps[j].lo, x_on);
            }
        }
        mass += comps[j].hi - comps[j].lo;
        if (on) {
            const double x_off = anchor + mass / c;
            if (j + 1 < comps.size() && x_off >= comps[j + 1].lo) continue;
            out.push_back({start, x_off});
            on = false;
        }
    }
}

std::vector<Interval> reflect(const std::vector<Interval>& comps) {
    std::vector<Interval> out;
    out.reserve(comps.size());
    for (auto it = comps.rbegin(); it != comps.rend(); ++it)
        out.push_back({-it->hi, -it->lo});
    return out;
}

} // namespace

DilationResult epsilon_dilate(const IntervalUnion& A, double eps) {
    if (!(eps >= 0.0 && eps < 1.0))
        throw DomainError("epsilon_dilate: eps outside [0,1)");
    if (eps == 0.0 || A.empty()) return {A, eps, true};
    // A component of infinite length dilates to the whole line: intervals
    // anchored at any point and reaching into the component carry covered
    // fraction arbitrarily close to 1.
    for (const auto& comp : A.components()) {
        if (std::isinf(comp.hi - comp.lo))
            return {IntervalUnion::single(-kInf, kInf), eps, true};
    }
    const double c = 1.0 - eps;
    const auto& comps = A.components();
    std::vector<Interval> pieces(comps);
    for (std::size_t i = 0; i < comps.size(); ++i)
        sweep_right(comps, i, c, pieces);
    const auto mirrored = reflect(comps);
    std::vector<Interval> mpieces;
    for (std::size_t i = 0; i < mirrored.size(); ++i)
        sweep_right(mirrored, i, c, mpieces);
    for (const auto& p : reflect(mpieces)) pieces.push_back(p);
    return {IntervalUnion(std::move(pieces)), eps, true};
}

bool dilation_membership(const IntervalUnion& A, double eps, double x) {
    if (A.contains(x)) return true;
    if (eps > 0.0) {
        for (const auto& comp : A.components())
            if (std::isinf(comp.hi - comp.lo)) return true;
    }
    const double c = 1.0 - eps;
    for (const auto& comp : A.components()) {
        if (comp.lo < x) {
            const double ratio = A.overlap_length(comp.lo, x) / (x - comp.lo);
            if (ratio >= c) return true;
        }
        if (comp.hi > x) {
            const double ratio = A.overlap_length(x, comp.hi) / (comp.hi - x);
            if (ratio >= c) return true;
        }
    }
    return false;
}

DilationResult epsilon_dilate_grid(const IntervalUnion& A, double eps,
                                   double resolution) {
    if (!(eps >= 0.0 && eps < 1.0))
        throw DomainError("epsilon_dilate_grid: eps outside [0,1)");
    if (!(resolution > 0.0))
        throw DomainError("epsilon_dilate_grid: resolution must be positive");
    if (eps == 0.0 || A.empty()) return {A, eps, false};
    const double span = A.components().back().hi - A.components().front().lo;
    const double pad = span * eps / (1.0 - eps) + resolution;
    const double lo = A.components().front().lo - pad;
    const double hi = A.components().back().hi + pad;
    std::vector<Interval> pieces;
    bool on = false;
    double start = 0.0;
    for (double x = lo; x <= hi; x += resolution) {
        const bool member = dilation_membership(A, eps, x);
        if (member && !on) {
            on = true;
            start = x;
        } else if (!member && on) {
            on = false;
            pieces.push_back({start, x - resolution});
        }
    }
    if (on) pieces.push_back({start, hi});
    for (const auto& c : A.components()) pieces.push_back(c);
    return {IntervalUnion(std::move(pieces)), eps, false};
}

double dilation_area(const Density1D& mu, const IntervalUnion& A) {
    const double lo = mu.support().lo, hi = mu.support().hi;
    double area = 0.0;
    for (const auto& comp : A.components()) {
        const double len = comp.hi - comp.lo;
        if (!(len > 0.0)) continue;
        if (std::isinf(len)) {
            // An infinite component dilates to the whole line for any
            // eps > 0: the area is +inf unless A already carries full mass.
            return 1.0 - measure(mu, A) > 1e-12 ? kInf : 0.0;
        }
        if (comp.lo > lo && comp.lo < hi) area += mu.density(comp.lo) * len;
        if (comp.hi > lo && comp.hi < hi) area += mu.density(comp.hi) * len;
    }
    return area;
}

double dilation_area_fd(const Density1D& mu, const IntervalUnion& A,
                        std::vector<double> steps) {
    if (steps.empty()) throw DomainError("dilation_area_fd: no steps");
    const double base = measure(mu, A);
    std::vector<double> d(steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const double m = measure(mu, epsilon_dilate(A, steps[i]).dilated);
        d[i] = (m - base) / steps[i];
    }
    if (steps.size() == 1) return d[0];
    // d(eps) = mu*(A) + c*eps + O(eps^2): eliminate the linear term from
    // consecutive pairs, then require the extrapolants to agree.
    std::vector<double> r(d.size() - 1);
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
        r[i] = (d[i + 1] * steps[i] - d[i] * steps[i + 1]) /
               (steps[i] - steps[i + 1]);
    if (r.size() >= 2) {
        const double a = r[r.size() - 2], b = r.back();
        if (std::abs(a - b) > 1e-3 * std::max({std::abs(a), std::abs(b), 1e-9}))
            throw NonConvergenceError("dilation_area_fd: estimates disagree");
    }
    return r.back();
}

VerificationReport check_sinh_conditions(const Density1D& mu,
                                         SampleSpec spec) {
    const double qlo = (1.0 - spec.coverage) / 2.0;
    std::vector<double> xs(spec.points);
    for (int i = 0; i < spec.points; ++i)
        xs[i] = mu.quantile(qlo + spec.coverage * (i + 0.5) / spec.points);
    double worst = kInf;
    double wl = 0, wr = 0;
    for (int i = 0; i < spec.points; ++i) {
        for (int j = i + 1; j < spec.points; ++j) {
            const double x = xs[i], y = xs[j];
            if (!(y > x)) continue;
            const double d = mu.psi(y) - mu.psi(x);
            const double lhs = std::sinh(d) / (y - x);
            const double rhs = 0.5 * (mu.psi_prime(y) + mu.psi_prime(x));
            // d >= 0 requires lhs >= rhs, d <= 0 requires lhs <= rhs.
            const double margin = d >= 0 ? lhs - rhs : rhs - lhs;
            if (margin < worst) {
                worst = margin;
                wl = lhs;
                wr = rhs;
            }
        }
    }
    VerificationReport rep;
    rep.check = "sinh-conditions";
    rep.params = {{"measure", mu.name()}, {"points", spec.points}};
    rep.lhs = wl;
    rep.rhs = wr;
    rep.tol = 1e-9;
    rep.margin = worst;
    rep.pass = worst >= -rep.tol;
    return rep;
}

VerificationReport check_kn_convexity(const Density1D& mu, double K, double N,
                                      SampleSpec spec) {
    if (N > 0.0 && N <= 1.0)
        throw DomainError("check_kn_convexity: N in (0,1] unsupported");
    const double qlo = (1.0 - spec.coverage) / 2.0;
    std::vector<double> xs(spec.points);
    for (int i = 0; i < spec.points; ++i)
        xs[i] = mu.quantile(qlo + spec.coverage * (i + 0.5) / spec.points);
    double worst = kInf;
    double wl = 0, wr = 0;
    for (int i = 0; i < spec.points; ++i) {
        for (int j = 0; j < spec.points; ++j) {
            if (i == j) continue;
            const double x = xs[i], y = xs[j], t = y - x;
            // log form of e^{-psi(x+t)} <= e^{-psi(x)} J_{-psi'(x),K,N}(t)
            const double J = model::j_eval(-mu.psi_prime(x), K, N, t);
            double margin;
            if (J == 0.0)
                margin = -kInf;
            else if (std::isinf(J))
                margin = kInf;
            else
                margin = std::log(J) + mu.psi(y) - mu.psi(x);
            if (margin < worst) {
                worst = margin;
                wl = -mu.psi(y);
                wr = -mu.psi(x) + (J > 0 ? std::log(J) : -kInf);
            }
        }
    }
    VerificationReport rep;
    rep.check = "kn-convexity";
    rep.params = {{"measure", mu.name()}, {"K", K},
                  {"N", std::isinf(N) ? 1e308 : N}, {"points", spec.points}};
    rep.lhs = wl;
    rep.rhs = wr;
    rep.tol = 1e-10;
    rep.margin = worst;
    rep.pass = worst >= -rep.tol;
    return rep;
}

double split_point(const Density1D& mu, const IntervalUnion& A, double theta,
                   Tolerance tol) {
    if (A.size() != 1)
        throw DomainError("split_point: A must be a single interval");
    const auto comp = A.components()[0];
    const double lo = mu.support().lo, hi = mu.support().hi;
    const double m = measure(mu, A);
    if (std::abs(m - theta) > 1e-6)
        throw DomainError("split_point: mu(A) != theta");
    if (comp.lo <= lo) return lo;
    if (comp.hi >= hi) return hi;
    const double a = comp.lo, b = comp.hi;
    auto g = [&](double xi) {
        return (mu.cdf(xi) - mu.cdf(a)) - theta * mu.cdf(xi);
    };
    const double xi = find_root(g, {a, b}, tol);
    const double below = mu.cdf(xi);
    const double minus = (below - mu.cdf(a)) / below;
    const double plus = (theta - (below - mu.cdf(a))) / (1.0 - below);
    if (std::abs(minus - theta) > 1e-8 || std::abs(plus - theta) > 1e-8)
        throw NonConvergenceError("split_point: conditional measures drifted");
    return xi;
}

VerificationReport borell_lemma_check(const Density1D& mu, double k, double t) {
    if (!(k > 0) || !(t >= 1.0))
        throw DomainError("borell_lemma_check: need k > 0, t >= 1");
    const double mK = measure(mu, IntervalUnion::single(-k, k));
    if (!(mK > 0)) throw DomainError("borell_lemma_check: mu(K) = 0");
    const double lhs = 1.0 - measure(mu, IntervalUnion::single(-t * k, t * k));
    const double rhs =
        std::pow((1.0 - mK) / mK, 0.5 * (t + 1.0)) * mK;
    VerificationReport rep;
    rep.check = "borell-lemma";
    rep.params = {{"measure", mu.name()}, {"k", k}, {"t", t}};
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.tol = 1e-10;
    rep.margin = rhs - lhs;
    rep.pass = rep.margin >= -rep.tol;
    return rep;
}

namespace {

struct Candidate {
    std::vector<Interval> comps;
};

// Functional value of a candidate union in the requested mode.
double objective(const Density1D& mu, const IntervalUnion& A, ProfileMode mode,
                 double eps) {
    if (mode == ProfileMode::Area) return dilation_area(mu, A);
    return measure(mu, epsilon_dilate(A, eps).dilated);
}

} // namespace

BruteForceResult brute_force_profile_argmin(const Density1D& mu, double theta,
                                            ProfileMode mode, int k_max,
                                            int resolution, double eps) {
    if (resolution < 100)
        throw DomainError("brute_force_profile: resolution < 100");
    if (k_max < 1 || k_max > 3)
        throw DomainError("brute_force_profile: k_max must be 1..3");
    if (!(theta >= 0.0 && theta <= 1.0))
        throw DomainError("brute_force_profile: theta outside [0,1]");
    if (mode == ProfileMode::Epsilon && !(eps >= 0.0 && eps < 1.0))
        throw DomainError("brute_force_profile: eps outside [0,1)");
    if (theta == 0.0) return {0.0, IntervalUnion()};
    if (theta == 1.0) {
        // The whole support: both endpoints sit on the boundary, the
        // dilation gains nothing, so the area vanishes.
        return {0.0, IntervalUnion::single(mu.support().lo, mu.support().hi)};
    }
    const int res = resolution;
    if (theta * res < 0.5)
        throw InfeasibleError("brute_force_profile: grid too coarse for theta");

    // Quantile and density tables on the grid i/res. Infinite support ends
    // are excluded from the candidate set (half-lines have infinite area).
    std::vector<double> Q(res + 1), Dn(res + 1);
    const bool lo_fin = std::isfinite(mu.support().lo);
    const bool hi_fin = std::isfinite(mu.support().hi);
    for (int i = 0; i <= res; ++i) {
        Q[i] = mu.quantile(static_cast<double>(i) / res);
        Dn[i] = mu.density(Q[i]);
    }
    const int i_lo = lo_fin ? 0 : 1;
    const int i_hi = hi_fin ? res : res - 1;

    // Exact right endpoint completing [left, r] to mass extra.
    auto complete = [&](double left, double extra) {
        const double target = std::min(mu.cdf(left) + extra, 1.0);
        return mu.quantile(target);
    };

    auto area_of = [&](const std::vector<Interval>& comps) {
        return objective(mu, IntervalUnion(std::vector<Interval>(comps)), mode,
                         eps);
    };

    double best = kInf;
    std::vector<Interval> best_comps;

    // k = 1: scan of left endpoints, right endpoint mass-adjusted.
    // Candidates evaluate in parallel; the reduction runs in index order so
    // ties keep the leftmost minimizer.
    {
        std::vector<double> vals(static_cast<std::size_t>(i_hi - i_lo + 1),
                                 kInf);
        std::vector<Interval> cand(vals.size());
        parallel_for(vals.size(), [&](std::size_t j) {
            const int i = i_lo + static_cast<int>(j);
            const double p = static_cast<double>(i) / res;
            if (p > 1.0 - theta + 1e-12) return;
            const double l = Q[i];
            const double r = complete(l, theta);
            if (!std::isfinite(r) && !hi_fin) return;
            cand[j] = {l, std::min(r, mu.support().hi)};
            vals[j] = area_of({cand[j]});
        });
        for (std::size_t j = 0; j < vals.size(); ++j) {
            if (vals[j] < best - 1e-15) {
                best = vals[j];
                best_comps = {cand[j]};
            }
        }
    }

    if (k_max >= 2) {
        // Coarse index-space enumeration; masses are index differences on
        // the quantile grid, so every candidate has mass ~theta up to one
        // grid cell. The best coarse candidate is re-evaluated with its
        // last endpoint mass-adjusted exactly.
        const int M = std::max(1, static_cast<int>(std::lround(theta * res)));
        const int stride = std::max(1, res / 96);
        for (int k = 2; k <= k_max; ++k) {
            if (k == 2) {
                // Parallel over (mass split, first position); each job scans
                // the second position. Reduction in job order keeps the
                // leftmost tie.
                std::vector<std::pair<int, int>> jobs;
                for (int m1 = stride; m1 < M; m1 += stride)
                    for (int a = i_lo; a + m1 <= i_hi; a += stride)
                        jobs.push_back({m1, a});
                std::vector<double> jv(jobs.size(), kInf);
                std::vector<int> jb(jobs.size(), -1);
                parallel_for(jobs.size(), [&](std::size_t j) {
                    const auto [m1, a] = jobs[j];
                    const int m2 = M - m1;
                    for (int b = a + m1 + stride; b + m2 <= i_hi;
                         b += stride) {
                        const double v =
                            area_of({{Q[a], Q[a + m1]}, {Q[b], Q[b + m2]}});
                        if (v < jv[j] - 1e-15) {
                            jv[j] = v;
                            jb[j] = b;
                        }
                    }
                });
                for (std::size_t j = 0; j < jobs.size(); ++j) {
                    if (jb[j] >= 0 && jv[j] < best - 1e-15) {
                        const auto [m1, a] = jobs[j];
                        const int m2 = M - m1, b = jb[j];
                        best = jv[j];
                        best_comps = {{Q[a], Q[a + m1]}, {Q[b], Q[b + m2]}};
                    }
                }
            } else if (k == 3) {
                const int st3 = std::max(1, res / 16);
                for (int m1 = st3; m1 < M; m1 += st3)
                    for (int m2 = st3; m1 + m2 < M; m2 += st3) {
                        const int m3 = M - m1 - m2;
                        for (int a = i_lo; a + m1 <= i_hi; a += st3)
                            for (int b = a + m1 + st3; b + m2 <= i_hi;
                                 b += st3)
                                for (int cpos = b + m2 + st3;
                                     cpos + m3 <= i_hi; cpos += st3) {
                                    const double v = area_of(
                                        {{Q[a], Q[a + m1]},
                                         {Q[b], Q[b + m2]},
                                         {Q[cpos], Q[cpos + m3]}});
                                    if (v < best - 1e-15) {
                                        best = v;
                                        best_comps = {{Q[a], Q[a + m1]},
                                                      {Q[b], Q[b + m2]},
                                                      {Q[cpos], Q[cpos + m3]}};
                                    }
                                }
                    }
            }
        }
        // Mass-adjust the final endpoint of the best multi-component
        // candidate so the total is exactly theta.
        if (best_comps.size() >= 2) {
            double mass_before = 0.0;
            for (std::size_t i = 0; i + 1 < best_comps.size(); ++i)
                mass_before += mu.cdf(best_comps[i].hi) - mu.cdf(best_comps[i].lo);
            const double extra = theta - mass_before;
            if (extra > 0.0) {
                auto adj = best_comps;
                adj.back().hi = std::max(adj.back().lo,
                                         complete(adj.back().lo, extra));
                const double v = area_of(adj);
                if (v <= best) {
                    best = v;
                    best_comps = adj;
                }
            }
        }
    }

    if (!std::isfinite(best))
        throw InfeasibleError("brute_force_profile: no feasible candidate");
    return {best, IntervalUnion(std::move(best_comps))};
}

double brute_force_profile(const Density1D& mu, double theta, ProfileMode mode,
                           int k_max, int resolution, double eps) {
    return brute_force_profile_argmin(mu, theta, mode, k_max, resolution, eps)
        .value;
}

double circle_ball_dilation(double r, double eps) {
    if (!(r > 0.0 && r < M_PI)) throw DomainError("circle ball: need 0<r<pi");
    if (!(eps >= 0.0 && eps < 1.0))
        throw DomainError("circle ball: eps outside [0,1)");
    if (r < 0.5 * M_PI * (1.0 - eps)) return (1.0 + eps) / (1.0 - eps) * r;
    return r + eps * M_PI;
}

namespace {

// Best covered-length ratio over geodesic arcs of length <= pi from x
// (circle parametrized on (-pi, pi], ball = (-r, r)).
double circle_best_ratio(double r, double x, int samples) {
    double bestr = 0.0;
    auto overlap = [&](double lo, double hi) {
        // arc [lo, hi] may extend below -pi or above pi; fold once.
        double s = std::max(0.0, std::min(hi, r) - std::max(lo, -r));
        if (lo < -M_PI)
            s += std::max(0.0, std::min(hi, r + 2.0 * M_PI) -
                                   std::max(lo, 2.0 * M_PI - r));
        if (hi > M_PI)
            s += std::max(0.0, std::min(hi - 2.0 * M_PI, r) -
                                   std::max(lo - 2.0 * M_PI, -r));
        return s;
    };
    std::vector<double> Ls(samples);
    for (int i = 0; i < samples; ++i)
        Ls[i] = M_PI * (i + 1.0) / samples;
    Ls.push_back(std::min(M_PI, std::abs(x) + r)); // analytic optimum
    for (double L : Ls) {
        bestr = std::max(bestr, overlap(x - L, x) / L);
        bestr = std::max(bestr, overlap(x, x + L) / L);
    }
    return bestr;
}

} // namespace

VerificationReport circle_ball_verify(double r, double eps, int samples) {
    const double claimed = circle_ball_dilation(r, eps);
    const double capped = std::min(claimed, M_PI);
    VerificationReport rep;
    rep.check = "circle-ball-dilation";
    rep.params = {{"r", r}, {"eps", eps}, {"claimed_radius", claimed}};
    rep.tol = 1e-3;
    // Just-inside point must be a member, just-outside must not be.
    const double xin = capped * (1.0 - 1e-3);
    const double rin = circle_best_ratio(r, xin, samples);
    bool ok = xin <= r || rin > 1.0 - eps;
    double margin = xin <= r ? 1.0 : rin - (1.0 - eps);
    if (claimed < M_PI * (1.0 - 1e-9)) {
        const double xout = std::min(claimed * (1.0 + 1e-3), M_PI);
        const double rout = circle_best_ratio(r, xout, samples);
        ok = ok && rout <= 1.0 - eps;
        margin = std::min(margin, (1.0 - eps) - rout);
    }
    rep.lhs = rin;
    rep.rhs = 1.0 - eps;
    rep.margin = margin;
    rep.pass = ok;
    return rep;
}

} // namespace dilation::measure1d
