#ifndef DILATION_NUMERICS_HPP
#define DILATION_NUMERICS_HPP

#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "dilation/errors.hpp"

namespace dilation::numerics {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Error targets shared by every solver. Profiles are composed through 2-3
/// nested solves, so the defaults sit well below the 1e-6 acceptance scale.
struct Tolerance {
    double rel = 1e-10;
    double abs = 1e-12;
    int max_iter = 200;
};

struct Bracket {
    double lo;
    double hi;
};

struct Interval {
    double lo;
    double hi;

    double length() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
    bool finite() const;
};

/// Caller-supplied tail knowledge for semi-infinite integrals: a decay
/// scale for the (0,1) map, and whether convergence is already known (the
/// empirical probe is skipped then).
struct TailHint {
    double scale = 1.0;
    bool assume_convergent = false;
};

/// Adaptive Gauss-Kronrod integration of a nonnegative integrand over a
/// finite or (semi-)infinite interval. Semi-infinite ends are mapped onto
/// (0,1) via t = a + scale*u/(1-u). Returns +inf when divergence is
/// detected: the integrand evaluates to +inf somewhere, or the tail probes
/// at 10, 10^2, 10^3 (times scale) past the finite endpoint decay slower
/// than t^{-1-1e-6}.
double integrate(const std::function<double(double)>& f, Interval iv,
                 Tolerance tol = {}, TailHint hint = {});

/// Bracketed root finding (Brent). Requires g(lo)*g(hi) <= 0.
double find_root(const std::function<double(double)>& g, Bracket bracket,
                 Tolerance tol = {});

/// Global-ish 1-D minimization: coarse grid scan (unimodality is NOT
/// assumed) refined by golden-section polish around the best grid point.
/// Returns (argmin, min).
std::pair<double, double> minimize_1d(const std::function<double(double)>& h,
                                      Bracket bracket, Tolerance tol = {},
                                      int grid = 256);

/// minimize_1d over an explicit probe set, with golden polish between the
/// neighbours of the best probe. Used by the profile evaluators whose
/// infima need log-spaced probes near open bracket ends.
std::pair<double, double> minimize_on_probes(
    const std::function<double(double)>& h, const std::vector<double>& probes,
    Tolerance tol = {});

/// Single Gauss-Kronrod 15 panel on [a,b]; returns {value, error estimate}.
std::pair<double, double> gk15(const std::function<double(double)>& f,
                               double a, double b);

} // namespace dilation::numerics

#endif
