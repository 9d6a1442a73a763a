#include "dilation/epsbounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "dilation/errors.hpp"
#include "dilation/profiles.hpp"

namespace dilation::epsbounds {

using model::CaseTag;

namespace {

// 7-point Gauss-Legendre on [a,b].
double gl7(const std::function<double(double)>& f, double a, double b) {
    static const double x[7] = {-0.9491079123427585, -0.7415311855993945,
                                -0.4058451513773972, 0.0,
                                0.4058451513773972,  0.7415311855993945,
                                0.9491079123427585};
    static const double w[7] = {0.1294849661688697, 0.2797053914892766,
                                0.3818300505051189, 0.4179591836734694,
                                0.3818300505051189, 0.2797053914892766,
                                0.1294849661688697};
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 7; ++i) s += w[i] * f(c + h * x[i]);
    return s * h;
}

bool k0_closed_form(const CurvatureTriple& t) {
    return t.tag() == CaseTag::Case3 || t.tag() == CaseTag::Case5 ||
           t.tag() == CaseTag::Case8;
}

// Uniform-grid cubic Hermite interpolant with 3-point slopes; used to make
// non-closed-form profiles cheap to differentiate.
struct CubicTable {
    double lo = 0, hi = 1;
    std::vector<double> y, d;

    void build(const std::function<double(double)>& f, int n) {
        y.resize(n + 1);
        d.resize(n + 1);
        const double h = (hi - lo) / n;
        for (int i = 0; i <= n; ++i) y[i] = f(lo + i * h);
        for (int i = 0; i <= n; ++i) {
            if (i == 0) d[i] = (y[1] - y[0]) / h;
            else if (i == n) d[i] = (y[n] - y[n - 1]) / h;
            else d[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
        }
    }
    double eval(double x, double* deriv = nullptr) const {
        const int n = static_cast<int>(y.size()) - 1;
        const double h = (hi - lo) / n;
        double s = (x - lo) / h;
        int i = std::clamp(static_cast<int>(s), 0, n - 1);
        const double u = s - i;
        const double y0 = y[i], y1 = y[i + 1], d0 = d[i] * h, d1 = d[i + 1] * h;
        const double a = 2 * y0 - 2 * y1 + d0 + d1;
        const double b = -3 * y0 + 3 * y1 - 2 * d0 - d1;
        if (deriv)
            *deriv = (3 * a * u * u + 2 * b * u + d0) / h;
        return ((a * u + b) * u + d0) * u + y0;
    }
};

} // namespace

VerificationReport check_assumption_A(const CurvatureTriple& triple) {
    triple.require_valid();
    auto D = [&](double th) { return profiles::cdd_profile_case(triple, th); };

    double worst = kInf; // normalized slack, positive = satisfied
    if (D(0.5) < 1e-12) worst = -1.0; // degenerate profile, Dtilde undefined
    // Continuity on [0,1]: the local oscillation must shrink with the probe
    // radius (the profile may have unbounded slope at the endpoints).
    for (double th : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
        auto osc = [&](double h) {
            const double a = D(std::max(0.0, th - h));
            const double b = D(std::min(1.0, th + h));
            return std::abs(b - a);
        };
        const double d1 = osc(1e-4), d2 = osc(1e-6);
        worst = std::min(worst, 1.0 - d2 / (0.5 * d1 + 1e-9));
    }
    // C^1 on (0,1): two-step finite differences agree.
    for (double th : {0.2, 0.4, 0.6, 0.8}) {
        const double d1 = (D(th + 1e-4) - D(th - 1e-4)) / 2e-4;
        const double d2 = (D(th + 1e-5) - D(th - 1e-5)) / 2e-5;
        worst = std::min(worst,
                         1.0 - std::abs(d1 - d2) / (1e-2 * (1.0 + std::abs(d2))));
    }
    // Existence of lim_{s->0} Dtilde: Cauchy criterion.
    auto dtilde_fd = [&](double s) {
        const double h = std::min({1e-6, s / 2, (1.0 - s) / 2});
        const double dp = (D(s + h) - D(s - h)) / (2.0 * h);
        return (dp - 1.0) / D(s);
    };
    const double t2 = dtilde_fd(1e-2), t3 = dtilde_fd(1e-3), t4 = dtilde_fd(1e-4);
    worst = std::min(worst, 1.0 - std::abs(t3 - t4) /
                                      (0.5 * std::abs(t2 - t3) + 0.02 *
                                       (1.0 + std::abs(t4))));
    // D'(0+) = 1.
    const double dp0 = (D(2e-5) - D(1e-5)) / 1e-5;
    worst = std::min(worst, 1.0 - std::abs(dp0 - 1.0) / 5e-3);

    VerificationReport rep;
    rep.check = "assumption-A";
    rep.params = {{"K", triple.K},
                  {"N", std::isinf(triple.N) ? 1e308 : triple.N},
                  {"D", std::isinf(triple.D) ? 1e308 : triple.D}};
    rep.lhs = dp0;
    rep.rhs = 1.0;
    rep.tol = 0.0;
    rep.margin = worst;
    rep.pass = worst >= 0.0;
    return rep;
}

EpsBoundPipeline build_pipeline(const CurvatureTriple& triple,
                                int grid_resolution) {
    triple.require_valid();
    if (grid_resolution < 64)
        throw DomainError("build_pipeline: grid_resolution < 64");
    auto rep = check_assumption_A(triple);
    if (!rep.pass)
        throw AssumptionAViolatedError(
            "build_pipeline: Assumption (A) check failed");

    EpsBoundPipeline p(triple);
    const double N = triple.N;
    if (k0_closed_form(triple)) {
        p.profile_ = [triple](double th) {
            return profiles::cdd_profile_case(triple, th);
        };
        // Dtilde closed form: -(N-1)/N * 1/(1-s); N = inf gives -1/(1-s).
        const double coef = std::isinf(N) ? 1.0 : (N - 1.0) / N;
        p.dtilde_ = [coef](double s) { return -coef / (1.0 - s); };
    } else {
        // Sample the profile once and interpolate; differentiating the
        // optimizer output directly would be both slow and noisy.
        auto table = std::make_shared<CubicTable>();
        table->lo = 0.0;
        table->hi = 1.0;
        table->build(
            [&](double th) { return profiles::cdd_profile_case(triple, th); },
            257);
        p.profile_ = [table](double th) { return table->eval(th); };
        p.dtilde_ = [table](double s) {
            double deriv;
            const double v = table->eval(s, &deriv);
            if (v < 1e-14)
                throw SingularProfileError("dtilde: profile vanishes");
            return (deriv - 1.0) / v;
        };
    }

    // theta knots: Chebyshev-clustered plus extra log-spaced tail points;
    // Dtilde has an endpoint singularity ~ -c/(1-s).
    std::vector<double> knots;
    const int n = grid_resolution;
    for (int i = 0; i <= n; ++i)
        knots.push_back(0.5 * (1.0 - std::cos(M_PI * i / n)));
    for (int k = 16; k <= 40; ++k)
        knots.push_back(1.0 - std::pow(10.0, -0.25 * k));
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    while (!knots.empty() && knots.back() >= 1.0 - 1e-12) knots.pop_back();

    p.knots_ = knots;
    p.cumdt_.assign(knots.size(), 0.0);
    p.finv_knots_.assign(knots.size(), 0.0);
    double acc_dt = 0.0, acc_fi = 0.0;
    for (std::size_t i = 1; i < knots.size(); ++i) {
        const double a = knots[i - 1], b = knots[i];
        acc_dt += gl7(p.dtilde_, a, b);
        p.cumdt_[i] = acc_dt;
        // 1/I inside the cell needs the running integral of dtilde up to
        // each quadrature node.
        auto inv_I = [&](double t) {
            return std::exp(-(p.cumdt_[i - 1] + gl7(p.dtilde_, a, t)));
        };
        acc_fi += gl7(inv_I, a, b);
        p.finv_knots_[i] = acc_fi;
    }

    // finv_infty by geometric extrapolation of finv(1 - 10^{-k}).
    const double v4 = p.finv(1.0 - 1e-4);
    const double v6 = p.finv(1.0 - 1e-6);
    const double v8 = p.finv(1.0 - 1e-8);
    const double r = (v8 - v6) / (v6 - v4);
    if (std::abs(r) < 0.9 && v6 - v4 < 0.5 * (1.0 + v4)) {
        p.finv_infty_ = v8 + (v8 - v6) * r / (1.0 - r);
    } else {
        p.finv_infty_ = kInf;
    }
    return p;
}

double EpsBoundPipeline::dtilde(double s) const {
    if (!(s > 0.0 && s < 1.0))
        throw DomainError("dtilde: s outside (0,1)");
    if (profile_(s) < 1e-14)
        throw SingularProfileError("dtilde: profile vanishes at s");
    return dtilde_(s);
}

double EpsBoundPipeline::cumdt_at(double theta) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), theta);
    std::size_t i = static_cast<std::size_t>(it - knots_.begin());
    if (i == 0) return 0.0;
    --i;
    if (i >= knots_.size() - 1) i = knots_.size() - 2;
    return cumdt_[i] + gl7(dtilde_, knots_[i], theta);
}

double EpsBoundPipeline::I(double theta) const {
    if (theta <= 0.0) return 1.0;
    if (theta >= 1.0 - 1e-12) theta = 1.0 - 1e-12;
    return std::exp(cumdt_at(theta));
}

double EpsBoundPipeline::finv(double theta) const {
    if (theta <= 0.0) return 0.0;
    if (theta > knots_.back()) theta = knots_.back();
    auto it = std::upper_bound(knots_.begin(), knots_.end(), theta);
    std::size_t i = static_cast<std::size_t>(it - knots_.begin());
    if (i == 0) return 0.0;
    --i;
    if (i >= knots_.size() - 1) i = knots_.size() - 2;
    auto inv_I = [&](double t) {
        return std::exp(-(cumdt_[i] + gl7(dtilde_, knots_[i], t)));
    };
    return finv_knots_[i] + gl7(inv_I, knots_[i], theta);
}

double EpsBoundPipeline::F(double x) const {
    if (x <= 0.0) return 0.0;
    if (std::isfinite(finv_infty_) && x >= finv_infty_) return 1.0;
    if (x >= finv_knots_.back()) {
        // Beyond the table: invert on the last reachable stretch.
        return knots_.back();
    }
    auto it = std::lower_bound(finv_knots_.begin(), finv_knots_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - finv_knots_.begin());
    if (i == 0) return knots_.front();
    double lo = knots_[i - 1], hi = knots_[i];
    double th = 0.5 * (lo + hi);
    for (int k = 0; k < 100; ++k) {
        const double v = finv(th) - x;
        if (v > 0) hi = th; else lo = th;
        const double d = I(th); // (F^{-1})' = 1/I  =>  Newton step v*I
        double nt = th - v * d;
        if (!(nt > lo && nt < hi)) nt = 0.5 * (lo + hi);
        if (std::abs(nt - th) < 1e-16 + 1e-15 * th) { th = nt; break; }
        th = nt;
    }
    return th;
}

double EpsBoundPipeline::admissible_threshold(double eps) const {
    if (!(eps >= 0.0 && eps < 1.0))
        throw DomainError("epsilon_bound: eps outside [0,1)");
    if (!std::isfinite(finv_infty_)) return 1.0;
    return F((1.0 - eps) * finv_infty_);
}

double EpsBoundPipeline::epsilon_bound(double theta, double eps) const {
    if (!(theta >= 0.0 && theta <= 1.0))
        throw DomainError("epsilon_bound: theta outside [0,1]");
    if (!(eps >= 0.0 && eps < 1.0))
        throw DomainError("epsilon_bound: eps outside [0,1)");
    if (eps == 0.0) return theta;
    if (theta == 0.0) return 0.0;
    const double thr = admissible_threshold(eps);
    if (thr < 1.0 && theta >= thr)
        throw OutOfDomainError("epsilon_bound: theta past the admissible threshold");
    return F(finv(theta) / (1.0 - eps));
}

void EpsBoundPipeline::dump_csv(std::ostream& os) const {
    os << "theta,dtilde,I,Finv\n";
    char buf[160];
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        const double th = knots_[i];
        const double dt = th > 0.0 && th < 1.0 ? dtilde_(th)
                                               : std::nan("");
        std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%.9g\n", th, dt,
                      std::exp(cumdt_[i]), finv_knots_[i]);
        os << buf;
    }
}

VerificationReport check_derivative_at_zero(const EpsBoundPipeline& pipeline,
                                            const std::vector<double>& thetas) {
    double worst = kInf;
    double wl = 0, wr = 0;
    for (double th : thetas) {
        const double want = pipeline.profile(th);
        const double d4 = (pipeline.epsilon_bound(th, 1e-4) - th) / 1e-4;
        const double d5 = (pipeline.epsilon_bound(th, 1e-5) - th) / 1e-5;
        const double est = (d5 * 1e-4 - d4 * 1e-5) / (1e-4 - 1e-5);
        const double slack =
            1e-3 - std::abs(est - want) / (std::abs(want) + 1e-12);
        if (slack < worst) {
            worst = slack;
            wl = est;
            wr = want;
        }
        // Strict monotonicity in eps.
        double prev = th;
        for (double e : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            double v;
            try {
                v = pipeline.epsilon_bound(th, e);
            } catch (const OutOfDomainError&) {
                break;
            }
            worst = std::min(worst, v - prev);
            prev = v;
        }
    }
    VerificationReport rep;
    rep.check = "eps-derivative-at-zero";
    rep.params = {{"thetas", thetas.size()}};
    rep.lhs = wl;
    rep.rhs = wr;
    rep.tol = 1e-3;
    rep.margin = worst;
    rep.pass = worst >= 0.0;
    return rep;
}

} // namespace dilation::epsbounds
