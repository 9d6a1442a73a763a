#ifndef DILATION_PROFILES_HPP
#define DILATION_PROFILES_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "dilation/model.hpp"
#include "dilation/report.hpp"

namespace dilation::profiles {

using model::CurvatureTriple;
using numerics::Interval;
using numerics::Tolerance;
using numerics::kInf;

enum class ProfileMethod { Flat, CddGeneral, CddCase, Gaussian, BruteForce };

std::string to_string(ProfileMethod m);

/// A sampled theta -> value map with provenance.
struct ProfileTable {
    std::string descriptor;
    std::vector<double> thetas;
    std::vector<double> values;
    ProfileMethod method = ProfileMethod::Flat;

    void validate() const; // lengths match, thetas ascending, ends finite
    void to_csv(std::ostream& os) const; // header: theta,value,method
};

/// One-sided density window for flat-profile evaluation. Works on the log
/// scale internally so deep-tail windows (e.g. a Gaussian restricted to
/// [100, inf)) do not underflow.
class FlatDensity {
  public:
    FlatDensity(std::function<double(double)> log_f, double a, double b,
                Tolerance tol = {});

    double a() const { return a_; }
    double b() const { return b_; }
    /// D-flat(f, [a,b])(theta).
    double profile(double theta) const;

  private:
    std::function<double(double)> log_f_;
    double a_, b_;
    double shift_ = 0.0;
    bool infinite_ = false;
    double L_ = 0.0; // tail map scale for infinite windows
    std::vector<double> knots_; // in mapped coordinate u
    std::vector<double> cum_;   // integral of exp(log_f - shift)
    double total_ = 0.0;

    double fshift(double t) const;
    double cum_at(double x) const;
    double alpha(double theta) const; // quantile of the window mass
};

/// Flat dilation profile of a raw nonnegative density on [a, b].
double flat_profile(const std::function<double(double)>& f, Interval window,
                    double theta, Tolerance tol = {});

/// The balance point of the two terms in the CDD profile at fixed (a, b).
struct BalanceSolution {
    double H = 0.0;
    double common_value = 0.0;
    double a = 0.0;
    double b = 0.0;
};

/// Solves the H-balance for a fixed window split (set length a, remaining
/// distance b = D - a or inf). Divergent J-integrals send their term to 0.
BalanceSolution cdd_balance_solve(const CurvatureTriple& triple, double theta,
                                  double a, Tolerance tol = {});

/// The general CDD dilation profile: nested optimization of the balance
/// value over the window split. 0 at theta in {0, 1}.
double cdd_profile_general(const CurvatureTriple& triple, double theta,
                           Tolerance tol = {});

/// Closed-case profile of Corollary-style dispatch: each case is a minimum
/// of flat-profile infima over a shift of the named model density; the
/// K = 0 cases short-circuit to closed forms.
double cdd_profile_case(const CurvatureTriple& triple, double theta,
                        Tolerance tol = {});

/// -(1-theta)log(1-theta).
double k0_ninf_profile(double theta);
/// -N(1-theta-(1-theta)^{1-1/N}).
double k0_finite_profile(double N, double theta);

/// Gaussian dilation profile (4/sqrt(2pi)) e^{-alpha^2/2} alpha with alpha
/// the theta-quantile of the folded standard normal.
double gaussian_profile(double theta);

/// Midpoint concavity of a profile table sampled on a uniform grid.
VerificationReport check_concavity(const ProfileTable& table,
                                   double slack = 1e-8);

/// Direction of f'(x)(x-a)/f(x) on the grid dictates the monotonicity of
/// D-flat(f,[a,x])(theta) in x; verifies both.
VerificationReport check_shift_monotonicity(
    const std::function<double(double)>& f, double a,
    const std::vector<double>& x_grid, double theta);

/// For a monotone density on (a,b): boundary-anchored intervals satisfy
/// mu*((a,c)) >= mu((a,c)) (non-decreasing f) or <= (non-increasing).
VerificationReport check_boundary_monotone(const measure1d::Density1D& mu,
                                           const std::vector<double>& c_grid);

/// Samples fn over thetas in parallel (deterministic ordering).
ProfileTable sample_profile(const std::function<double(double)>& fn,
                            const std::vector<double>& thetas,
                            ProfileMethod method, std::string descriptor);

} // namespace dilation::profiles

#endif
