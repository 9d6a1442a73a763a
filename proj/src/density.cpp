#include "dilation/density.hpp"

#include <algorithm>
#include <cmath>

#include "dilation/errors.hpp"

namespace dilation::measure1d {

using numerics::gk15;
using numerics::kInf;

Density1D::Density1D(Interval support, std::function<double(double)> psi,
                     std::function<double(double)> psi_prime,
                     std::optional<double> normalization, Tolerance tol,
                     std::string name)
    : support_(support),
      psi_(std::move(psi)),
      psi_prime_(std::move(psi_prime)),
      name_(std::move(name)) {
    if (!(support_.lo < support_.hi))
        throw DomainError("Density1D: empty support");
    build_table(tol);
    const double Z = raw_total_ * std::exp(-psi_shift_);
    if (!(Z > 0.0) || !std::isfinite(Z))
        throw DomainError("Density1D: non-normalizable density");
    norm_ = normalization.value_or(Z);
    validate(tol, normalization.has_value());
}

double Density1D::raw_density(double x) const {
    if (x <= support_.lo || x >= support_.hi) return 0.0;
    return std::exp(-(psi_(x) - psi_shift_));
}

double Density1D::density(double x) const {
    if (x <= support_.lo || x >= support_.hi) return 0.0;
    return raw_density(x) * std::exp(-psi_shift_) / norm_;
}

void Density1D::build_table(const Tolerance& tol) {
    // Pick a finite core window covering essentially all mass.
    double lo = support_.lo, hi = support_.hi;
    const bool lo_inf = !std::isfinite(lo), hi_inf = !std::isfinite(hi);
    double a = lo_inf ? -1.0 : lo;
    double b = hi_inf ? 1.0 : hi;
    if (lo_inf || hi_inf) {
        if (lo_inf && hi_inf) { a = -1.0; b = 1.0; }
        else if (hi_inf) b = a + 1.0;
        else a = b - 1.0;
    }

    // Shift psi so exp stays in range: probe for the minimum of psi.
    {
        double m = kInf;
        for (int i = 0; i <= 64; ++i) {
            const double x = a + (b - a) * i / 64.0;
            if (x > support_.lo && x < support_.hi) m = std::min(m, psi_(x));
        }
        psi_shift_ = std::isfinite(m) ? m : 0.0;
    }

    auto f = [this](double x) { return raw_density(x); };

    // Expand infinite ends geometrically until the local mass is negligible.
    auto expand = [&](double from, double dir) {
        std::vector<double> cuts;
        double step = std::max(1.0, 0.125 * (b - a));
        double x = from;
        for (int i = 0; i < 300; ++i) {
            double nx = x + dir * step;
            cuts.push_back(nx);
            auto [v, e] = gk15(f, std::min(x, nx), std::max(x, nx));
            (void)e;
            const double tail_guess = std::abs(v);
            x = nx;
            step *= 1.5;
            if (tail_guess < 1e-16 && i > 2) break;
        }
        return cuts;
    };

    std::vector<double> knots;
    if (lo_inf)
        for (double c : expand(a, -1.0)) knots.push_back(c);
    knots.push_back(a);
    const int core = 512;
    for (int i = 1; i < core; ++i) knots.push_back(a + (b - a) * i / core);
    knots.push_back(b);
    if (hi_inf)
        for (double c : expand(b, +1.0)) knots.push_back(c);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    // Refine cells whose GK error is large relative to the target.
    knots_.clear();
    cum_.clear();
    knots_.push_back(knots.front());
    cum_.push_back(0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        std::vector<std::pair<double, double>> stack{{knots[i], knots[i + 1]}};
        while (!stack.empty()) {
            auto [x0, x1] = stack.back();
            stack.pop_back();
            auto [v, e] = gk15(f, x0, x1);
            if (!std::isfinite(v))
                throw DomainError("Density1D: density not integrable");
            if (e > 1e-13 * (1.0 + std::abs(v)) && x1 - x0 > 1e-12 * (1.0 + std::abs(x0))) {
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
    raw_total_ = acc;
    (void)tol;
}

double Density1D::raw_cdf(double x) const {
    if (x <= knots_.front()) return 0.0;
    if (x >= knots_.back()) return raw_total_;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
    auto f = [this](double t) { return raw_density(t); };
    auto [v, e] = gk15(f, knots_[i], x);
    (void)e;
    return cum_[i] + v;
}

double Density1D::cdf(double x) const {
    const double p = raw_cdf(x) * std::exp(-psi_shift_) / norm_;
    return std::clamp(p, 0.0, 1.0);
}

double Density1D::quantile(double p) const {
    if (p < 0.0 || p > 1.0) throw DomainError("quantile: p outside [0,1]");
    if (p <= 0.0) return support_.lo;
    if (p >= 1.0) return support_.hi;
    const double target = p * norm_ * std::exp(psi_shift_);
    auto it = std::lower_bound(cum_.begin(), cum_.end(), target);
    if (it == cum_.begin()) return knots_.front();
    if (it == cum_.end()) return knots_.back();
    std::size_t i = static_cast<std::size_t>(it - cum_.begin());
    double lo = knots_[i - 1], hi = knots_[i];
    // Bisection + Newton polish on raw_cdf within the cell.
    double x = 0.5 * (lo + hi);
    for (int k = 0; k < 80; ++k) {
        const double v = raw_cdf(x) - target;
        const double d = raw_density(x);
        if (v > 0) hi = x; else lo = x;
        double nx = (d > 0) ? x - v / d : 0.5 * (lo + hi);
        if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
        if (std::abs(nx - x) < 1e-15 * (1.0 + std::abs(x))) { x = nx; break; }
        x = nx;
    }
    return x;
}

std::vector<double> Density1D::quantile_grid(int n) const {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = quantile((i + 1.0) / (n + 1.0));
    return xs;
}

void Density1D::validate(const Tolerance& tol, bool norm_supplied) {
    (void)tol;
    if (norm_supplied) {
        const double mass = raw_total_ * std::exp(-psi_shift_) / norm_;
        if (std::abs(mass - 1.0) > 1e-8)
            throw DomainError("Density1D: supplied normalization off by " +
                              std::to_string(mass - 1.0));
    }
    // psi' must match finite differences of psi at interior probes.
    const int probes = 100;
    for (int i = 0; i < probes; ++i) {
        const double x = quantile((i + 0.5) / probes);
        const double h = 1e-6 * (1.0 + std::abs(x));
        if (x - h <= support_.lo || x + h >= support_.hi) continue;
        const double fd = (psi_(x + h) - psi_(x - h)) / (2.0 * h);
        const double an = psi_prime_(x);
        if (std::abs(fd - an) > 1e-4 * (1.0 + std::abs(an)))
            throw DomainError("Density1D: psi_prime disagrees with psi");
    }
}

} // namespace dilation::measure1d
