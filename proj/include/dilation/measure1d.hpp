#ifndef DILATION_MEASURE1D_HPP
#define DILATION_MEASURE1D_HPP

#include <vector>

#include "dilation/density.hpp"
#include "dilation/interval_union.hpp"
#include "dilation/report.hpp"

namespace dilation::measure1d {

using numerics::Tolerance;

struct DilationResult {
    IntervalUnion dilated;
    double eps = 0.0;
    bool exact = true;
};

/// mu(A): sum of component masses, components intersected with the support.
double measure(const Density1D& mu, const IntervalUnion& A);

/// Exact epsilon-dilation of an interval union in the ambient line.
/// A point x belongs to A_eps iff some interval I with endpoint x has
/// |I cap A| > (1-eps)|I|. The ratio |[y,x] cap A|/(x-y) is piecewise
/// monotone in y with maxima only at component endpoints facing x, so the
/// dilation is a finite union whose boundaries solve linear equations;
/// one sweep per anchor gives all O(k^2) candidate edges.
DilationResult epsilon_dilate(const IntervalUnion& A, double eps);

/// Membership test against the dilation definition directly (the grid
/// oracle): max over anchor endpoints of the covered-length ratio.
bool dilation_membership(const IntervalUnion& A, double eps, double x);

/// Grid fallback for the dilation (exact = false): membership scanned on a
/// uniform grid of the given resolution and assembled into intervals.
DilationResult epsilon_dilate_grid(const IntervalUnion& A, double eps,
                                   double resolution = 1e-4);

/// Closed-form dilation area: interior component [a,b] contributes
/// (e^{-psi(a)} + e^{-psi(b)})(b-a)/Z; an endpoint at or beyond the support
/// boundary contributes nothing.
double dilation_area(const Density1D& mu, const IntervalUnion& A);

/// Finite-difference dilation area (measure(A_eps)-measure(A))/eps with
/// Richardson extrapolation over the given descending steps; the
/// independent oracle for dilation_area.
double dilation_area_fd(const Density1D& mu, const IntervalUnion& A,
                        std::vector<double> steps = {1e-3, 1e-4, 1e-5});

struct SampleSpec {
    int points = 48;          // grid points (pairs are all i<j combinations)
    double coverage = 0.998;  // quantile window for infinite supports
};

/// Checks the sinh comparison conditions (the interval-shift monotonicity
/// hypotheses) on sampled pairs.
VerificationReport check_sinh_conditions(const Density1D& mu,
                                         SampleSpec spec = {});

/// Checks e^{-psi(x+t)} <= e^{-psi(x)} J_{-psi'(x),K,N}(t) on sampled
/// (x, x+t) pairs: the operational CD(K,N) test for 1-D needles.
VerificationReport check_kn_convexity(const Density1D& mu, double K, double N,
                                      SampleSpec spec = {});

/// The split point xi with mu((-inf,xi] cap A)/mu((-inf,xi]) = theta for a
/// single interval A with mu(A) = theta; both conditional measures then
/// equal theta. Returns the relevant support endpoint when A touches it.
double split_point(const Density1D& mu, const IntervalUnion& A, double theta,
                   Tolerance tol = {});

/// Verifies 1 - mu(tK) <= ((1-mu(K))/mu(K))^{(t+1)/2} mu(K) for K = [-k,k].
VerificationReport borell_lemma_check(const Density1D& mu, double k, double t);

enum class ProfileMode { Area, Epsilon };

/// Grid-search oracle for profile claims: minimum of the target functional
/// over unions of up to k_max intervals with endpoints on the quantile grid
/// F^{-1}(i/resolution), each candidate mass-adjusted to theta. Deterministic
/// left-to-right scan; ties keep the leftmost minimizer.
double brute_force_profile(const Density1D& mu, double theta, ProfileMode mode,
                           int k_max, int resolution, double eps = 0.0);

/// Same search, also reporting the best candidate found (k = 1 reports the
/// minimizing interval).
struct BruteForceResult {
    double value;
    IntervalUnion argmin;
};
BruteForceResult brute_force_profile_argmin(const Density1D& mu, double theta,
                                            ProfileMode mode, int k_max,
                                            int resolution, double eps = 0.0);

/// Dilated radius of a metric ball on the unit circle:
/// (1+eps)/(1-eps) r for r < (pi/2)(1-eps), else r + eps*pi.
double circle_ball_dilation(double r, double eps);

/// Sampling verifier: tests membership of points just inside/outside the
/// claimed dilated radius via geodesic arcs of length <= pi.
VerificationReport circle_ball_verify(double r, double eps, int samples = 256);

} // namespace dilation::measure1d

#endif
