#ifndef DILATION_ENTROPY_HPP
#define DILATION_ENTROPY_HPP

#include <functional>
#include <vector>

#include "dilation/measure1d.hpp"

namespace dilation::entropy {

using measure1d::Density1D;
using measure1d::IntervalUnion;
using numerics::Tolerance;
using numerics::kInf;

/// A nonnegative Borel function whose sublevel sets are interval unions.
/// The structure (monotone / unimodal / piecewise-monotone with breakpoints)
/// is what makes sublevels computable by per-piece root finding.
struct TestFunction {
    enum class Structure { Monotone, Unimodal, PiecewiseMonotone };

    std::function<double(double)> f;
    Structure structure = Structure::Monotone;
    std::vector<double> breakpoints; // interior monotonicity flips, sorted

    static TestFunction monotone(std::function<double(double)> f);
    static TestFunction unimodal(std::function<double(double)> f, double flip);
    static TestFunction piecewise(std::function<double(double)> f,
                                  std::vector<double> flips);

    double operator()(double x) const { return f(x); }

    /// {f <= lambda} intersected with the support of mu. Unbounded support
    /// ends are resolved to the 1e-12 quantile tails.
    IntervalUnion sublevel(const Density1D& mu, double lambda,
                           Tolerance tol = {}) const;
};

/// int g dmu by adaptive quadrature against the density.
double expectation(const Density1D& mu, const std::function<double(double)>& g,
                   Tolerance tol = {});

struct RemezEstimate {
    double s = 1.0;
    double C = 1.0; // +inf when no finite constant works
    std::vector<double> lambda_grid;
    double worst_lambda = 0.0;
};

struct LambdaGridSpec {
    int resolution = 200; // quantile resolution of the initial grid
    int refine_points = 21;
};

/// Least C >= 1 with mu(sublevel(lambda)_{1-1/s}) <= mu(sublevel(lambda C))
/// for every lambda: sup over a quantile lambda-grid with a refinement pass
/// around the worst lambda (a lower estimate of the true sup). Returns
/// C = +inf when the constant grows without bound (e.g. indicators).
RemezEstimate measured_remez(const Density1D& mu, const TestFunction& f,
                             double s, LambdaGridSpec grid = {});

/// limsup estimate of (u_f(s)-1)/(s-1): max over the probe steps.
/// Returns +inf when u_f is infinite at a probed s.
double remez_derivative_at_one(const Density1D& mu, const TestFunction& f,
                               std::vector<double> steps = {1.1, 1.01, 1.001});

/// int rho log rho dmu for a density rho with unit mean (0 log 0 := 0).
double relative_entropy(const Density1D& mu, const TestFunction& rho,
                        Tolerance tol = {});

/// N-entropy U_N = N int rho^{(1+N)/N} dmu - N for N in (-inf,-1) u [1,inf).
double n_entropy(const Density1D& mu, const TestFunction& rho, double N,
                 Tolerance tol = {});

/// (1+N) int g rho dmu - int g^{1+N} dmu - N over the admissible class; the
/// supremum over g equals the N-entropy and is attained at g = rho^{1/N}.
/// N = inf evaluates the log dual int rho log g dmu - log int g dmu.
double dual_functional(const Density1D& mu, const TestFunction& rho,
                       const TestFunction& g, double N, Tolerance tol = {});

/// int_0^inf mu*(sublevel(t)) dt: the left side of the weak co-area
/// inequality.
double coarea_lhs(const Density1D& mu, const TestFunction& f,
                  Tolerance tol = {});

/// f_eps(x) = inf{lambda > 0 : x in sublevel(lambda)_eps}.
TestFunction f_epsilon(const Density1D& mu, const TestFunction& f, double eps);

/// Phi_f = limsup estimate of (f - f_eps)/eps over the given steps.
TestFunction phi_f(const Density1D& mu, const TestFunction& f,
                   std::vector<double> steps = {1e-2, 1e-3});

/// Chebyshev polynomial by the three-term recurrence.
double chebyshev_T(int d, double x);
/// T_d(2s-1): the Remez bound for degree-d polynomial norms.
double remez_poly_bound(int d, double s);

/// (int |f|^q)^{1/q} <= (q/p)^{uprime} (int |f|^p)^{1/p}.
VerificationReport reverse_holder_check(const Density1D& mu,
                                        const TestFunction& f, double p,
                                        double q, double uprime);

/// Relative entropy (N = inf) or N-entropy of rho against u'_rho(1) under a
/// verified CD(0,N) measure.
VerificationReport entropy_bound_check(const Density1D& mu,
                                       const TestFunction& rho, double N);

} // namespace dilation::entropy

#endif
