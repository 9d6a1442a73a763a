#ifndef DILATION_MODEL_HPP
#define DILATION_MODEL_HPP

#include <string>

#include "dilation/density.hpp"
#include "dilation/numerics.hpp"

namespace dilation::model {

using measure1d::Density1D;
using numerics::Interval;
using numerics::kInf;
using numerics::Tolerance;

/// sin(sqrt(k)t)/sqrt(k), t, or sinh(sqrt(-k)t)/sqrt(-k) by the sign of k.
/// Smooth across k = 0 (Taylor branch for small |k| t^2).
double s_kappa(double kappa, double t);
/// cos / 1 / cosh analogue of s_kappa.
double c_kappa(double kappa, double t);

enum class CaseTag {
    Excluded = 0,
    Case1, // N = inf, K > 0, D = inf
    Case2, // N = inf, K != 0, D < inf
    Case3, // N = inf, K = 0
    Case4, // N in (1, inf), K > 0
    Case5, // N in [1, inf), K = 0
    Case6, // N in (1, inf), K < 0, D < inf
    Case7, // N in (-inf, 0], K > 0
    Case8, // N in (-inf, 0), K = 0
    Case9, // N in (-inf, 0], K < 0, D < pi/sqrt(delta)
};

/// The (K, N, D) parameter bundle. N lives in (-inf,0] u [1,inf] (inf
/// allowed); D in (0, inf]. Classified at construction into the nine
/// closed-profile cases or Excluded with a reason.
struct CurvatureTriple {
    double K;
    double N;
    double D;

    CurvatureTriple(double K_, double N_, double D_);

    /// K/(N-1); only defined for N not in {1, inf}.
    double delta() const;
    CaseTag tag() const { return tag_; }
    bool excluded() const { return tag_ == CaseTag::Excluded; }
    const std::string& excluded_reason() const { return reason_; }
    /// Throws ExcludedTripleError when excluded.
    void require_valid() const;

  private:
    CaseTag tag_ = CaseTag::Excluded;
    std::string reason_;
};

/// The comparison density J_{H,K,N}(t): power/exponential/constant
/// branches by N, with the positive-part clamp. +inf is a value (the
/// N < 1 clamp branch), never an error.
double j_eval(double H, double K, double N, double t);

inline double j_eval(double H, const CurvatureTriple& triple, double t) {
    return j_eval(H, triple.K, triple.N, t);
}

/// Maximal interval around t=0 on which the base c_delta + H/(N-1) s_delta
/// stays positive (the model bump). Defined for N not in {1, inf};
/// the whole line when the base never vanishes.
Interval j_positivity_window(double H, double K, double N);

/// Integral of J_{H,K,N} over [lo, hi] as used inside the CDD profile:
/// for N > 1 the trigonometric branch is truncated at the model bump (the
/// base recurs positive periodically but comparison windows live in one
/// bump); for N < 1 a window leaving the bump makes the integral +inf.
/// Divergent tails yield +inf.
double j_integral(double H, double K, double N, double lo, double hi,
                  Tolerance tol = {});

struct SConcaveParam {
    double s;
    explicit SConcaveParam(double s_);
    bool log_concave_case() const { return s == 0.0; }
};

/// The s-concave model density rho_s(x) = (1-sx)_+^{(1-s)/s} on [0, 1/s]
/// (s > 0) or [0, inf) (s <= 0); s = 0 is e^{-x}. Normalized numerically.
Density1D s_model_density(SConcaveParam s, Tolerance tol = {});

/// Exact epsilon-profile of the model measure mu_s:
/// 1 - (((1-theta)^s - eps)/(1-eps))_+^{1/s}, s = 0 branch
/// 1 - (1-theta)^{1/(1-eps)}.
double s_model_epsilon_profile(SConcaveParam s, double eps, double theta);

/// Density presets exposed to the CLI: "exponential", "gaussian:K",
/// "s-concave:s", "power:N", "sin-power:K,N", "sinh-power:K,N",
/// "cosh-power:K,N", "uniform:D".
Density1D preset_density(const std::string& spec);

Density1D exponential_density();
Density1D gaussian_density(double K);
Density1D power_density(double N);
Density1D sin_power_density(double K, double N);
Density1D sinh_power_density(double K, double N);
Density1D cosh_power_density(double K, double N);
Density1D uniform_density(double D);

} // namespace dilation::model

#endif
