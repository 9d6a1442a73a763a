#include "dilation/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace dilation::numerics {

bool Interval::finite() const { return std::isfinite(lo) && std::isfinite(hi); }

namespace {

void require_valid(const Tolerance& tol) {
    if (!(tol.rel > 0.0) || !(tol.abs > 0.0) || tol.max_iter < 1)
        throw DomainError("Tolerance: need rel > 0, abs > 0, max_iter >= 1");
}

} // namespace

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1,1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
    double a, b, value, err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

} // namespace

std::pair<double, double> gk15(const std::function<double(double)>& f,
                               double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = kWgk[7] * f(c);
    double resg = kWg[3] * f(c);
    if (!std::isfinite(resk)) return {resk, 0.0};
    for (int i = 0; i < 7; ++i) {
        const double f1 = f(c - h * kXgk[i]);
        const double f2 = f(c + h * kXgk[i]);
        if (!std::isfinite(f1) || !std::isfinite(f2))
            return {std::numeric_limits<double>::infinity(), 0.0};
        resk += kWgk[i] * (f1 + f2);
        if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
    }
    const double value = resk * h;
    const double err = std::abs((resk - resg) * h);
    return {value, err};
}

namespace {

double integrate_finite(const std::function<double(double)>& f, double a,
                        double b, const Tolerance& tol) {
    if (!(b > a)) {
        if (b == a) return 0.0;
        throw DomainError("integrate: empty interval");
    }
    auto [v0, e0] = gk15(f, a, b);
    if (std::isinf(v0)) return kInf;
    std::priority_queue<Panel> heap;
    heap.push({a, b, v0, e0});
    double total = v0, toterr = e0;
    int splits = 0;
    const int max_splits = std::max(tol.max_iter, 32) * 8;
    while (toterr > std::max(tol.abs, tol.rel * std::abs(total))) {
        if (heap.empty() || ++splits > max_splits)
            throw NonConvergenceError("integrate: panel budget exhausted");
        Panel p = heap.top();
        heap.pop();
        const double m = 0.5 * (p.a + p.b);
        if (m <= p.a || m >= p.b) continue; // panel at machine resolution
        auto [v1, e1] = gk15(f, p.a, m);
        auto [v2, e2] = gk15(f, m, p.b);
        if (std::isinf(v1) || std::isinf(v2)) return kInf;
        total += v1 + v2 - p.value;
        toterr += e1 + e2 - p.err;
        heap.push({p.a, m, v1, e1});
        heap.push({m, p.b, v2, e2});
    }
    return total;
}

// Tail divergence pre-check at probes 10, 10^2, 10^3 beyond the finite end.
// Returns true when the integrand is detectably non-integrable there.
bool tail_diverges(const std::function<double(double)>& f, double a,
                   double sign, double scale) {
    double t[3] = {10.0 * scale, 100.0 * scale, 1000.0 * scale};
    double v[3];
    for (int i = 0; i < 3; ++i) {
        v[i] = f(a + sign * t[i]);
        if (!std::isfinite(v[i]) && v[i] > 0) return true;
    }
    // Decay exponent between the farthest pair of nonzero probes.
    for (int i = 2; i >= 1; --i) {
        if (v[i] > 0 && v[i - 1] > 0) {
            const double expo =
                -std::log(v[i] / v[i - 1]) / std::log(t[i] / t[i - 1]);
            return expo <= 1.0 + 1e-6;
        }
    }
    // All-but-one probe vanished: a constant nonzero tail was not seen.
    if (v[2] > 0) return true; // revives far out without decaying before
    return false;
}

double integrate_upper_infinite(const std::function<double(double)>& f,
                                double a, const Tolerance& tol,
                                const TailHint& hint) {
    const double S = hint.scale > 0 && std::isfinite(hint.scale) ? hint.scale
                                                                 : 1.0;
    if (!hint.assume_convergent && tail_diverges(f, a, +1.0, S)) return kInf;
    auto g = [&](double u) {
        const double d = 1.0 - u;
        const double t = a + S * u / d;
        const double v = f(t);
        return v * S / (d * d);
    };
    return integrate_finite(g, 0.0, 1.0, tol);
}

} // namespace

double integrate(const std::function<double(double)>& f, Interval iv,
                 Tolerance tol, TailHint hint) {
    require_valid(tol);
    const double a = iv.lo, b = iv.hi;
    if (std::isnan(a) || std::isnan(b) || !(a < b)) {
        if (a == b) return 0.0;
        throw DomainError("integrate: empty or invalid interval");
    }
    if (std::isfinite(a) && std::isfinite(b)) return integrate_finite(f, a, b, tol);
    if (std::isfinite(a)) return integrate_upper_infinite(f, a, tol, hint);
    auto fr = [&](double t) { return f(-t); };
    if (std::isfinite(b)) return integrate_upper_infinite(fr, -b, tol, hint);
    // Doubly infinite: split at 0.
    const double left = integrate_upper_infinite(fr, 0.0, tol, hint);
    if (std::isinf(left)) return kInf;
    const double right = integrate_upper_infinite(f, 0.0, tol, hint);
    if (std::isinf(right)) return kInf;
    return left + right;
}

double find_root(const std::function<double(double)>& g, Bracket bracket,
                 Tolerance tol) {
    require_valid(tol);
    double a = bracket.lo, b = bracket.hi;
    if (!(a < b)) throw DomainError("find_root: invalid bracket");
    double fa = g(a), fb = g(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (std::isnan(fa) || std::isnan(fb) || fa * fb > 0.0)
        throw BracketError("find_root: g has the same sign at both ends");

    // Brent's method.
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < std::max(tol.max_iter, 100); ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() *
                                std::abs(b) + 0.5 * tol.abs;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                                   std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = g(b);
        if (fb == 0.0) return b;
        if ((fb > 0) == (fc > 0)) {
            c = a; fc = fa;
            d = b - a; e = d;
        }
    }
    throw NonConvergenceError("find_root: max_iter exhausted");
}

namespace {

std::pair<double, double> golden(const std::function<double(double)>& h,
                                 double lo, double hi, double flo, double fhi,
                                 const Tolerance& tol) {
    constexpr double phi = 0.6180339887498949;
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = h(x1), f2 = h(x2);
    double bx = flo < fhi ? lo : hi, bf = std::min(flo, fhi);
    for (int i = 0; i < 200 && hi - lo > tol.abs * (1.0 + std::abs(lo)); ++i) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = h(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = h(x2);
        }
    }
    if (f1 < bf) { bf = f1; bx = x1; }
    if (f2 < bf) { bf = f2; bx = x2; }
    return {bx, bf};
}

} // namespace

std::pair<double, double> minimize_1d(const std::function<double(double)>& h,
                                      Bracket bracket, Tolerance tol,
                                      int grid) {
    require_valid(tol);
    if (!(bracket.lo < bracket.hi))
        throw DomainError("minimize_1d: invalid bracket");
    if (grid < 2) grid = 2;
    std::vector<double> probes(grid + 1);
    for (int i = 0; i <= grid; ++i)
        probes[i] = bracket.lo + (bracket.hi - bracket.lo) * i / grid;
    return minimize_on_probes(h, probes, tol);
}

std::pair<double, double> minimize_on_probes(
    const std::function<double(double)>& h, const std::vector<double>& probes,
    Tolerance tol) {
    if (probes.empty()) throw DomainError("minimize_on_probes: no probes");
    std::vector<double> xs(probes);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::size_t best = 0;
    std::vector<double> vals(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        vals[i] = h(xs[i]);
        if (std::isnan(vals[i]))
            throw NonConvergenceError("minimize: objective is NaN");
        if (vals[i] < vals[best]) best = i;
    }
    if (xs.size() == 1) return {xs[0], vals[0]};
    const std::size_t l = best == 0 ? 0 : best - 1;
    const std::size_t r = best + 1 >= xs.size() ? xs.size() - 1 : best + 1;
    auto [px, pv] = golden(h, xs[l], xs[r], vals[l], vals[r], tol);
    if (pv < vals[best]) return {px, pv};
    return {xs[best], vals[best]};
}

} // namespace dilation::numerics
