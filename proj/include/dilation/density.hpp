#ifndef DILATION_DENSITY_HPP
#define DILATION_DENSITY_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dilation/numerics.hpp"

namespace dilation::measure1d {

using numerics::Interval;
using numerics::Tolerance;

/// A weighted probability measure on an interval, given by a smooth
/// log-density psi and its derivative. The density is e^{-psi}/Z with Z
/// computed at construction unless supplied. A cumulative table over the
/// support is built eagerly; cdf/quantile evaluate against it with local
/// Gauss-Kronrod correction, so they are accurate to quadrature precision.
class Density1D {
  public:
    Density1D(Interval support, std::function<double(double)> psi,
              std::function<double(double)> psi_prime,
              std::optional<double> normalization = std::nullopt,
              Tolerance tol = {}, std::string name = "custom");

    const Interval& support() const { return support_; }
    const std::string& name() const { return name_; }
    double normalization() const { return norm_; }

    double psi(double x) const { return psi_(x); }
    double psi_prime(double x) const { return psi_prime_(x); }

    /// e^{-psi(x)}/Z inside the open support, 0 outside.
    double density(double x) const;

    /// mu((-inf, x]).
    double cdf(double x) const;
    /// Smallest x with cdf(x) = p.
    double quantile(double p) const;

    /// Interior points at quantile levels (i+1)/(n+1), i = 0..n-1.
    std::vector<double> quantile_grid(int n) const;

  private:
    Interval support_;
    std::function<double(double)> psi_;
    std::function<double(double)> psi_prime_;
    double norm_ = 1.0;
    std::string name_;
    double psi_shift_ = 0.0; // density computed as e^{-(psi-shift)} / (Z e^{shift})

    // cumulative table: knots_[i], cum_[i] = integral of e^{-(psi-shift)} up
    // to knots_[i]; raw_total_ = full integral in the shifted scale.
    std::vector<double> knots_;
    std::vector<double> cum_;
    double raw_total_ = 0.0;

    double raw_density(double x) const; // e^{-(psi-shift)}, no Z
    double raw_cdf(double x) const;
    void build_table(const Tolerance& tol);
    void validate(const Tolerance& tol, bool norm_supplied);
};

} // namespace dilation::measure1d

#endif
