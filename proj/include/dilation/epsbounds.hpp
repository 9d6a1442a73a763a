#ifndef DILATION_EPSBOUNDS_HPP
#define DILATION_EPSBOUNDS_HPP

#include <functional>
#include <iosfwd>
#include <memory>
#include <vector>

#include "dilation/model.hpp"
#include "dilation/report.hpp"

namespace dilation::epsbounds {

using model::CurvatureTriple;
using numerics::Tolerance;
using numerics::kInf;

/// Numerically tests the profile regularity the epsilon-bound construction
/// needs: continuity on [0,1], C^1 on (0,1), existence of the s->0 limit of
/// (D'(s)-1)/D(s), and D'(0+) = 1.
VerificationReport check_assumption_A(const CurvatureTriple& triple);

/// The epsilon-bound pipeline: from the profile D of a triple, build
/// Dtilde = (D'-1)/D, I = exp(int Dtilde), F^{-1} = int 1/I, and evaluate
/// the dilation bound F(F^{-1}(theta)/(1-eps)). Immutable once built.
class EpsBoundPipeline {
  public:
    const CurvatureTriple& triple() const { return triple_; }

    /// (D'(s) - 1)/D(s). Closed-form derivative for the K = 0 cases.
    double dtilde(double s) const;
    /// exp(int_0^theta dtilde).
    double I(double theta) const;
    /// int_0^theta 1/I.
    double finv(double theta) const;
    /// lim_{theta->1} finv (finite or +inf).
    double finv_infty() const { return finv_infty_; }
    /// Inverse of finv on [0, finv_infty).
    double F(double x) const;
    /// Largest admissible theta at this eps: F((1-eps) finv_infty), or 1.
    double admissible_threshold(double eps) const;
    /// F(finv(theta)/(1-eps)); throws OutOfDomain past the threshold.
    double epsilon_bound(double theta, double eps) const;

    /// Profile value D(theta) this pipeline was built from.
    double profile(double theta) const { return profile_(theta); }

    /// CSV dump of (theta, dtilde, I, finv) at the table knots.
    void dump_csv(std::ostream& os) const;

    friend EpsBoundPipeline build_pipeline(const CurvatureTriple& triple,
                                           int grid_resolution);

  private:
    explicit EpsBoundPipeline(CurvatureTriple t) : triple_(t) {}
    CurvatureTriple triple_;
    std::function<double(double)> profile_;
    std::function<double(double)> dtilde_;
    std::vector<double> knots_;  // theta grid, clustered at both ends
    std::vector<double> cumdt_;  // int_0^knot dtilde
    std::vector<double> finv_knots_;
    double finv_infty_ = kInf;

    double cumdt_at(double theta) const;
};

/// Builds the pipeline after verifying Assumption (A) numerically.
/// K != 0 profiles are sampled once and interpolated before
/// differentiating; K = 0 uses the closed forms throughout.
EpsBoundPipeline build_pipeline(const CurvatureTriple& triple,
                                int grid_resolution = 2048);

/// d/deps epsilon_bound(theta, eps) at eps = 0 equals the profile, and the
/// bound is strictly increasing in eps.
VerificationReport check_derivative_at_zero(const EpsBoundPipeline& pipeline,
                                            const std::vector<double>& thetas);

} // namespace dilation::epsbounds

#endif
