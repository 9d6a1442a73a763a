#include "dilation/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "dilation/errors.hpp"
#include "dilation/measure1d.hpp"
#include "dilation/parallel.hpp"

namespace dilation::profiles {

using model::CaseTag;
using numerics::find_root;
using numerics::gk15;
using numerics::minimize_on_probes;

std::string to_string(ProfileMethod m) {
    switch (m) {
        case ProfileMethod::Flat: return "flat";
        case ProfileMethod::CddGeneral: return "cdd-general";
        case ProfileMethod::CddCase: return "cdd-case";
        case ProfileMethod::Gaussian: return "gaussian";
        case ProfileMethod::BruteForce: return "brute-force";
    }
    return "?";
}

void ProfileTable::validate() const {
    if (thetas.size() != values.size())
        throw DomainError("ProfileTable: length mismatch");
    if (thetas.empty()) throw DomainError("ProfileTable: empty");
    for (std::size_t i = 1; i < thetas.size(); ++i)
        if (!(thetas[i] > thetas[i - 1]))
            throw DomainError("ProfileTable: thetas not ascending");
    if (!std::isfinite(values.front()) || !std::isfinite(values.back()))
        throw DomainError("ProfileTable: non-finite end values");
}

void ProfileTable::to_csv(std::ostream& os) const {
    os << "theta,value,method\n";
    char buf[64];
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.9g,%.9g,", thetas[i], values[i]);
        os << buf << to_string(method) << "\n";
    }
}

// ---------------------------------------------------------------------------
// FlatDensity

FlatDensity::FlatDensity(std::function<double(double)> log_f, double a,
                         double b, Tolerance tol)
    : log_f_(std::move(log_f)), a_(a), b_(b) {
    if (!std::isfinite(a_) || !(b_ > a_))
        throw DomainError("FlatDensity: need finite a < b");
    const bool infinite = !std::isfinite(b_);

    // Window scale: for infinite windows, the distance at which log f has
    // dropped ~35 below its maximum.
    double L = infinite ? 0.0 : b_ - a_;
    {
        double peak = -kInf;
        const double span = infinite ? 1.0 : b_ - a_;
        for (int i = 1; i < 64; ++i) {
            const double t = a_ + span * i / 64.0;
            if (t < b_) peak = std::max(peak, log_f_(t));
        }
        if (infinite) {
            for (int k = -20; k <= 60; ++k) {
                const double t = a_ + std::ldexp(1.0, k);
                const double v = log_f_(t);
                peak = std::max(peak, v);
                if (v < peak - 35.0) {
                    L = std::ldexp(1.0, k);
                    break;
                }
            }
            if (L == 0.0)
                throw DomainError("FlatDensity: f does not decay; not integrable");
        }
        shift_ = peak;
    }

    auto to_t = [&](double u) {
        return infinite ? a_ + L * u / (1.0 - u) : a_ + (b_ - a_) * u;
    };
    auto integrand = [&](double u) {
        const double t = to_t(u);
        if (t <= a_ || t >= b_) return 0.0;
        const double w = infinite ? L / ((1.0 - u) * (1.0 - u)) : b_ - a_;
        const double lf = log_f_(t);
        if (!std::isfinite(lf)) return 0.0; // log f = -inf at zeros of f
        return std::exp(lf - shift_) * w;
    };

    const double u_hi = infinite ? 1.0 - 1e-7 : 1.0;
    const int cells = 512;
    knots_.push_back(0.0);
    cum_.push_back(0.0);
    double acc = 0.0;
    for (int i = 0; i < cells; ++i) {
        std::vector<std::pair<double, double>> stack{
            {u_hi * i / cells, u_hi * (i + 1) / cells}};
        while (!stack.empty()) {
            auto [x0, x1] = stack.back();
            stack.pop_back();
            auto [v, e] = gk15(integrand, x0, x1);
            if (!std::isfinite(v))
                throw DomainError("FlatDensity: non-integrable window");
            if (e > 1e-13 * (1.0 + std::abs(v)) && x1 - x0 > 1e-10) {
                const double m = 0.5 * (x0 + x1);
                stack.push_back({m, x1});
                stack.push_back({x0, m});
                continue;
            }
            acc += v;
            knots_.push_back(x1);
            cum_.push_back(acc);
        }
    }
    total_ = acc;
    infinite_ = infinite;
    L_ = L;
    (void)tol;
    if (!(total_ > 0.0) || !std::isfinite(total_))
        throw DomainError("FlatDensity: window has zero or infinite mass");
}

double FlatDensity::fshift(double t) const {
    if (t <= a_ || t >= b_) return 0.0;
    const double lf = log_f_(t);
    return std::isfinite(lf) ? std::exp(lf - shift_) : 0.0;
}

double FlatDensity::cum_at(double u) const {
    if (u <= 0.0) return 0.0;
    if (u >= knots_.back()) return total_;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), u);
    const std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
    auto integrand = [&](double uu) {
        const double t = infinite_ ? a_ + L_ * uu / (1.0 - uu)
                                   : a_ + (b_ - a_) * uu;
        const double w = infinite_ ? L_ / ((1.0 - uu) * (1.0 - uu)) : b_ - a_;
        return fshift(t) * w;
    };
    auto [v, e] = gk15(integrand, knots_[i], u);
    (void)e;
    return cum_[i] + v;
}

double FlatDensity::alpha(double theta) const {
    const double target = theta * total_;
    auto it = std::lower_bound(cum_.begin(), cum_.end(), target);
    if (it == cum_.begin()) return a_;
    if (it == cum_.end()) return b_;
    std::size_t i = static_cast<std::size_t>(it - cum_.begin());
    double lo = knots_[i - 1], hi = knots_[i];
    double u = 0.5 * (lo + hi);
    for (int k = 0; k < 80; ++k) {
        const double v = cum_at(u) - target;
        if (v > 0) hi = u; else lo = u;
        const double t = infinite_ ? a_ + L_ * u / (1.0 - u)
                                   : a_ + (b_ - a_) * u;
        const double w = infinite_ ? L_ / ((1.0 - u) * (1.0 - u)) : b_ - a_;
        const double d = fshift(t) * w;
        double nu = (d > 0) ? u - v / d : 0.5 * (lo + hi);
        if (!(nu > lo && nu < hi)) nu = 0.5 * (lo + hi);
        if (std::abs(nu - u) < 1e-16) { u = nu; break; }
        u = nu;
    }
    return infinite_ ? a_ + L_ * u / (1.0 - u) : a_ + (b_ - a_) * u;
}

double FlatDensity::profile(double theta) const {
    if (!(theta >= 0.0 && theta <= 1.0))
        throw DomainError("flat profile: theta outside [0,1]");
    if (theta == 0.0) return 0.0;
    if (theta == 1.0) {
        if (std::isfinite(b_)) {
            // Genuine boundary value f(b)(b-a)/Z, taking f at b itself.
            const double lf = log_f_(b_);
            const double fb = std::isfinite(lf) ? std::exp(lf - shift_) : 0.0;
            return fb * (b_ - a_) / total_;
        }
        // Limit value along theta -> 1.
        const double v1 = profile(1.0 - 1e-6);
        const double v2 = profile(1.0 - 1e-8);
        return std::abs(v2) <= std::abs(v1) ? v2 : v1;
    }
    const double al = alpha(theta);
    return fshift(al) * (al - a_) / total_;
}

double flat_profile(const std::function<double(double)>& f, Interval window,
                    double theta, Tolerance tol) {
    auto log_f = [&f](double t) {
        const double v = f(t);
        if (v < 0.0) throw DomainError("flat_profile: negative density");
        return v > 0.0 ? std::log(v) : -kInf;
    };
    FlatDensity fd(log_f, window.lo, window.hi, tol);
    return fd.profile(theta);
}

// ---------------------------------------------------------------------------
// CDD profiles

double k0_ninf_profile(double theta) {
    if (theta <= 0.0 || theta >= 1.0) return 0.0;
    return -(1.0 - theta) * std::log1p(-theta);
}

double k0_finite_profile(double N, double theta) {
    if (theta <= 0.0 || theta >= 1.0) return 0.0;
    if (N == 1.0) return theta;
    if (N == 0.0) return 0.0; // -N(1-th-(1-th)^{1-1/N}) -> 0 as N -> 0-
    return -N * (1.0 - theta - std::pow(1.0 - theta, 1.0 - 1.0 / N));
}

BalanceSolution cdd_balance_solve(const CurvatureTriple& triple, double theta,
                                  double a, Tolerance tol) {
    triple.require_valid();
    const double D = triple.D;
    if (!(a > 0.0) || (std::isfinite(D) && !(a < D)))
        throw DomainError("cdd_balance_solve: a outside (0, D)");
    const double b = std::isfinite(D) ? D - a : kInf;
    const double K = triple.K, N = triple.N;
    Tolerance qtol{1e-9, 1e-12, tol.max_iter};

    auto terms = [&](double H) {
        const double Jp = model::j_integral(H, K, N, 0.0, b, qtol);
        const double Jm = model::j_integral(H, K, N, -a, 0.0, qtol);
        const double t1 = std::isinf(Jp) ? 0.0 : a * (1.0 - theta) / Jp;
        const double t2 = std::isinf(Jm) ? 0.0 : a * theta / Jm;
        return std::pair<double, double>{t1, t2};
    };
    auto zeta = [&](double H) {
        auto [t1, t2] = terms(H);
        if (std::isinf(t1)) return kInf;
        if (std::isinf(t2)) return -kInf;
        return t1 - t2;
    };

    // The first term falls from inf to 0 and the second rises from 0 to inf
    // as H sweeps the line, so zeta crosses zero once; bracket by doubling.
    double Hl = -1.0, Hh = 1.0;
    bool ok_l = false, ok_h = false;
    double probe_best = kInf, probe_H = 0.0;
    auto note = [&](double H) {
        auto [t1, t2] = terms(H);
        const double m = std::max(t1, t2);
        if (m < probe_best) { probe_best = m; probe_H = H; }
    };
    for (int k = 0; k < 50 && !ok_l; ++k) {
        if (zeta(Hl) > 0.0) { ok_l = true; break; }
        note(Hl);
        Hl *= 2.0;
    }
    for (int k = 0; k < 50 && !ok_h; ++k) {
        if (zeta(Hh) < 0.0) { ok_h = true; break; }
        note(Hh);
        Hh *= 2.0;
    }
    if (!ok_l || !ok_h) {
        // Degenerate (a term vanishes for every H): report the best probe.
        BalanceSolution s;
        s.H = probe_H;
        s.common_value = std::isfinite(probe_best) ? probe_best : 0.0;
        s.a = a;
        s.b = b;
        return s;
    }

    for (int it = 0; it < 200; ++it) {
        const double Hm = 0.5 * (Hl + Hh);
        if (Hm == Hl || Hm == Hh) break;
        const double z = zeta(Hm);
        if (z > 0.0) Hl = Hm;
        else Hh = Hm;
        if (Hh - Hl < 1e-13 * (1.0 + std::abs(Hm))) break;
    }
    const double H = 0.5 * (Hl + Hh);
    auto [t1, t2] = terms(H);
    BalanceSolution s;
    s.H = H;
    s.common_value = std::max(t1, t2);
    s.a = a;
    s.b = b;
    return s;
}

namespace {

std::vector<double> unit_probes() {
    std::vector<double> u;
    for (int i = 1; i <= 32; ++i) u.push_back(i / 33.0);
    for (int k = 2; k <= 6; ++k) {
        u.push_back(std::pow(10.0, -k));
        u.push_back(1.0 - std::pow(10.0, -k));
    }
    std::sort(u.begin(), u.end());
    return u;
}

} // namespace

double cdd_profile_general(const CurvatureTriple& triple, double theta,
                           Tolerance tol) {
    triple.require_valid();
    if (!(theta >= 0.0 && theta <= 1.0))
        throw DomainError("cdd_profile_general: theta outside [0,1]");
    if (theta == 0.0 || theta == 1.0) return 0.0;
    // N = 0: the J-window mass diverges logarithmically at the bump edge,
    // so the nested infimum degenerates to 0 (approached as a -> 0).
    if (triple.N == 0.0) return 0.0;
    const double D = triple.D;
    double scale = 1.0;
    if (!std::isfinite(D)) {
        if (std::isinf(triple.N)) {
            if (triple.K != 0.0) scale = 1.0 / std::sqrt(std::abs(triple.K));
        } else if (triple.K != 0.0) {
            scale = 1.0 / std::sqrt(std::abs(triple.delta()));
        }
    }
    auto a_of = [&](double u) {
        return std::isfinite(D) ? u * D : scale * u / (1.0 - u);
    };
    auto value = [&](double u) {
        return cdd_balance_solve(triple, theta, a_of(u), tol).common_value;
    };
    auto [ubest, vbest] = minimize_on_probes(value, unit_probes(), {1e-6, 1e-8, 60});
    (void)ubest;
    return std::max(0.0, vbest);
}

// ---------------------------------------------------------------------------
// Closed-case profiles

namespace {

// Minimize v over [lo, hi] with optional growth when the minimizer pins an
// end; extra log-clustered probes resolve open ends whose limits matter.
double min_over_shift(const std::function<double(double)>& v, double lo,
                      double hi, bool grow_lo, bool grow_hi,
                      bool cluster_lo, bool cluster_hi) {
    double best = kInf;
    for (int round = 0; round < 7; ++round) {
        std::vector<double> probes;
        const int n = 33;
        for (int i = 0; i <= n; ++i) probes.push_back(lo + (hi - lo) * i / n);
        for (int k = 2; k <= 7; ++k) {
            const double off = (hi - lo) * std::pow(10.0, -k);
            if (cluster_lo) probes.push_back(lo + off);
            if (cluster_hi) probes.push_back(hi - off);
        }
        auto [x, val] = minimize_on_probes(v, probes, {1e-8, 1e-10, 60});
        best = std::min(best, val);
        const double span = hi - lo;
        const bool at_lo = x <= lo + 0.05 * span;
        const bool at_hi = x >= hi - 0.05 * span;
        if (at_lo && grow_lo) { lo -= span; continue; }
        if (at_hi && grow_hi) { hi += span; continue; }
        break;
    }
    return best;
}

double case_gaussian_window(double K, double D, double theta) {
    // N = inf, K != 0; window [x, x+D] (D may be inf; then K > 0).
    auto v = [&](double x) {
        FlatDensity fd([K](double t) { return -0.5 * K * t * t; }, x,
                       std::isfinite(D) ? x + D : kInf);
        return fd.profile(theta);
    };
    const double w = 6.0 / std::sqrt(std::abs(K));
    const double span = std::isfinite(D) ? w + D : w;
    double best = min_over_shift(v, -span, w, true, true, false, false);
    // The escape x -> +inf (K > 0) or x -> -inf (K < 0) is an exponential
    // window whose profile is the K = 0 closed form.
    best = std::min(best, k0_ninf_profile(theta));
    return best;
}

double case_sin_window(double K, double N, double D, double theta) {
    // sin^{N-1}(sqrt(delta) t) windows inside (0, pi/sqrt(delta)).
    const double c = std::sqrt(K / (N - 1.0));
    const double top = M_PI / c;
    auto logf = [N, c](double t) {
        return (N - 1.0) * std::log(std::sin(c * t));
    };
    if (N > 1.0) {
        // Case 4: x in [0, top); right end clipped to the bump edge.
        auto v = [&](double x) {
            const double hi = std::min(std::isfinite(D) ? x + D : kInf, top);
            FlatDensity fd(logf, x, hi);
            return fd.profile(theta);
        };
        double best = min_over_shift(v, 0.0, top * (1.0 - 1e-8), false, false,
                                     false, true);
        best = std::min(best, k0_finite_profile(N, theta)); // x -> top limit
        return best;
    }
    // Case 9: x in (0, top - D), window [x, x+D] strictly inside the bump.
    const double hi = top - D;
    auto v = [&](double x) {
        FlatDensity fd(logf, x, x + D);
        return fd.profile(theta);
    };
    double best = min_over_shift(v, hi * 1e-8, hi * (1.0 - 1e-8), false, false,
                                 true, true);
    best = std::min(best, k0_finite_profile(N, theta)); // x -> 0 limit
    return best;
}

double case_negative_curvature(double K, double N, double D, double theta) {
    // Case 6: N in (1, inf), K < 0, D < inf.
    const double c = std::sqrt(-K / (N - 1.0));
    double best = kInf;
    {
        // sinh^{N-1}(-c t) on [x, min(x+D, 0)], x < 0.
        auto v = [&](double x) {
            FlatDensity fd(
                [N, c](double t) {
                    return (N - 1.0) * std::log(std::sinh(-c * t));
                },
                x, std::min(x + D, 0.0));
            return fd.profile(theta);
        };
        best = std::min(best, min_over_shift(v, -(D + 4.0 / c), -1e-9 * D,
                                             true, false, false, true));
        best = std::min(best, k0_finite_profile(N, theta)); // x -> 0 limit
    }
    {
        // cosh^{N-1}(c t) on [x, x+D].
        auto v = [&](double x) {
            FlatDensity fd(
                [N, c](double t) {
                    return (N - 1.0) * std::log(std::cosh(c * t));
                },
                x, x + D);
            return fd.profile(theta);
        };
        const double w = D + 4.0 / c;
        best = std::min(best, min_over_shift(v, -w, w, true, true, false, false));
    }
    {
        FlatDensity fd(
            [N, c](double t) { return -c * (N - 1.0) * t; }, 0.0, D);
        best = std::min(best, fd.profile(theta));
    }
    return best;
}

double case_positive_curvature_negative_N(double K, double N, double D,
                                          double theta) {
    // Case 7: N <= 0, K > 0; delta < 0.
    const double c = std::sqrt(-K / (N - 1.0));
    double best = kInf;
    const bool dfin = std::isfinite(D);
    {
        // sinh^{N-1}(c t) on [x, x+D], x > 0.
        auto v = [&](double x) {
            FlatDensity fd(
                [N, c](double t) {
                    return (N - 1.0) * std::log(std::sinh(c * t));
                },
                x, dfin ? x + D : kInf);
            return fd.profile(theta);
        };
        const double w = (dfin ? D : 0.0) + 6.0 / c;
        best = std::min(best, min_over_shift(v, w * 1e-9, w, false, true,
                                             true, false));
        best = std::min(best, k0_finite_profile(N, theta)); // x -> 0 limit
    }
    {
        // cosh^{N-1}(c t) on [x, x+D].
        auto v = [&](double x) {
            FlatDensity fd(
                [N, c](double t) {
                    return (N - 1.0) * std::log(std::cosh(c * t));
                },
                x, dfin ? x + D : kInf);
            return fd.profile(theta);
        };
        const double w = (dfin ? D : 0.0) + 6.0 / c;
        best = std::min(best, min_over_shift(v, -w, w, true, true, false, false));
    }
    {
        // e^{sqrt(-delta)(N-1) t} on [0, D]: decaying since N < 1.
        FlatDensity fd([N, c](double t) { return c * (N - 1.0) * t; }, 0.0,
                       dfin ? D : kInf);
        best = std::min(best, fd.profile(theta));
    }
    return best;
}

} // namespace

double cdd_profile_case(const CurvatureTriple& triple, double theta,
                        Tolerance tol) {
    (void)tol;
    triple.require_valid();
    if (!(theta >= 0.0 && theta <= 1.0))
        throw DomainError("cdd_profile_case: theta outside [0,1]");
    if (theta == 0.0 || theta == 1.0) return 0.0;
    // N = 0 (Cases 7 and 9): the power-window entry sinh^{-1}/sin^{-1}
    // carries logarithmically divergent mass toward the bump edge and its
    // shift infimum vanishes; the profile is identically 0.
    if (triple.N == 0.0) return 0.0;
    const double K = triple.K, N = triple.N, D = triple.D;
    switch (triple.tag()) {
        case CaseTag::Case3: return k0_ninf_profile(theta);
        case CaseTag::Case5:
        case CaseTag::Case8: return k0_finite_profile(N, theta);
        case CaseTag::Case1:
        case CaseTag::Case2: return case_gaussian_window(K, D, theta);
        case CaseTag::Case4:
        case CaseTag::Case9: return case_sin_window(K, N, D, theta);
        case CaseTag::Case6: return case_negative_curvature(K, N, D, theta);
        case CaseTag::Case7:
            return case_positive_curvature_negative_N(K, N, D, theta);
        case CaseTag::Excluded: break;
    }
    throw ExcludedTripleError("cdd_profile_case: excluded triple");
}

double gaussian_profile(double theta) {
    if (!(theta >= 0.0 && theta <= 1.0))
        throw DomainError("gaussian_profile: theta outside [0,1]");
    if (theta == 0.0 || theta == 1.0) return 0.0;
    auto g = [&](double x) { return std::erf(x / M_SQRT2) - theta; };
    const double alpha = find_root(g, {0.0, 40.0}, {1e-14, 1e-14, 200});
    return 4.0 / std::sqrt(2.0 * M_PI) * std::exp(-0.5 * alpha * alpha) *
           alpha;
}

VerificationReport check_concavity(const ProfileTable& table, double slack) {
    table.validate();
    const auto& v = table.values;
    double worst = kInf;
    double wl = 0, wr = 0;
    for (std::size_t i = 0; i + 2 < v.size(); ++i) {
        const double mid = 2.0 * v[i + 1];
        const double ends = v[i] + v[i + 2];
        if (mid - ends < worst) {
            worst = mid - ends;
            wl = ends;
            wr = mid;
        }
    }
    VerificationReport rep;
    rep.check = "profile-concavity";
    rep.params = {{"descriptor", table.descriptor},
                  {"method", to_string(table.method)},
                  {"points", table.thetas.size()}};
    rep.lhs = wl;
    rep.rhs = wr;
    rep.tol = slack;
    rep.margin = worst;
    rep.pass = worst >= -slack;
    return rep;
}

VerificationReport check_shift_monotonicity(
    const std::function<double(double)>& f, double a,
    const std::vector<double>& x_grid, double theta) {
    if (x_grid.size() < 3)
        throw DomainError("check_shift_monotonicity: need >= 3 grid points");
    // Direction of r(x) = f'(x)(x-a)/f(x) on the grid (finite differences).
    std::vector<double> r(x_grid.size());
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        const double x = x_grid[i];
        const double h = 1e-6 * (1.0 + std::abs(x));
        const double fp = (f(x + h) - f(x - h)) / (2.0 * h);
        r[i] = fp * (x - a) / f(x);
    }
    int dir = 0; // +1 non-decreasing, -1 non-increasing
    {
        double up = 0, down = 0, scale = 0;
        for (std::size_t i = 1; i < r.size(); ++i) {
            up = std::max(up, r[i] - r[i - 1]);
            down = std::max(down, r[i - 1] - r[i]);
            scale = std::max(scale, std::abs(r[i]));
        }
        const double tol_r = 1e-8 * (1.0 + scale);
        if (up <= tol_r) dir = -1;
        else if (down <= tol_r) dir = +1;
        else dir = up >= down ? +1 : -1; // mixed: dominant trend
    }
    std::vector<double> prof(x_grid.size());
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        FlatDensity fd([&](double t) { return std::log(f(t)); }, a, x_grid[i]);
        prof[i] = fd.profile(theta);
    }
    double worst = kInf;
    for (std::size_t i = 1; i < prof.size(); ++i) {
        const double step = dir * (prof[i] - prof[i - 1]);
        worst = std::min(worst, step);
    }
    VerificationReport rep;
    rep.check = "shift-monotonicity";
    rep.params = {{"direction", dir}, {"theta", theta},
                  {"grid", x_grid.size()}};
    rep.lhs = prof.front();
    rep.rhs = prof.back();
    rep.tol = 1e-9;
    rep.margin = worst;
    rep.pass = worst >= -rep.tol;
    return rep;
}

VerificationReport check_boundary_monotone(const measure1d::Density1D& mu,
                                           const std::vector<double>& c_grid) {
    const double a = mu.support().lo;
    if (!std::isfinite(a))
        throw DomainError("check_boundary_monotone: left end must be finite");
    // Detect monotone direction of the density from interior samples.
    int dir = 0;
    {
        auto xs = mu.quantile_grid(24);
        double up = 0, down = 0;
        for (std::size_t i = 1; i < xs.size(); ++i) {
            const double d = mu.density(xs[i]) - mu.density(xs[i - 1]);
            up = std::max(up, d);
            down = std::max(down, -d);
        }
        dir = up <= 1e-12 ? -1 : (down <= 1e-12 ? +1 : 0);
        if (dir == 0)
            throw DomainError("check_boundary_monotone: density not monotone");
    }
    double worst = kInf;
    double wl = 0, wr = 0;
    for (double c : c_grid) {
        const auto A = measure1d::IntervalUnion::single(a, c);
        const double star = measure1d::dilation_area(mu, A);
        const double mass = measure1d::measure(mu, A);
        // non-decreasing: mu* >= mu; non-increasing: mu* <= mu
        const double margin = dir > 0 ? star - mass : mass - star;
        if (margin < worst) {
            worst = margin;
            wl = star;
            wr = mass;
        }
    }
    VerificationReport rep;
    rep.check = "boundary-monotone";
    rep.params = {{"measure", mu.name()}, {"direction", dir},
                  {"grid", c_grid.size()}};
    rep.lhs = wl;
    rep.rhs = wr;
    rep.tol = 1e-9;
    rep.margin = worst;
    rep.pass = worst >= -rep.tol;
    return rep;
}

ProfileTable sample_profile(const std::function<double(double)>& fn,
                            const std::vector<double>& thetas,
                            ProfileMethod method, std::string descriptor) {
    ProfileTable t;
    t.descriptor = std::move(descriptor);
    t.thetas = thetas;
    t.values.assign(thetas.size(), 0.0);
    parallel_for(thetas.size(),
                 [&](std::size_t i) { t.values[i] = fn(thetas[i]); });
    t.method = method;
    return t;
}

} // namespace dilation::profiles
