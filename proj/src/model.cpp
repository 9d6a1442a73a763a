#include "dilation/model.hpp"

#include <cmath>
#include <sstream>

#include "dilation/errors.hpp"

namespace dilation::model {

using numerics::integrate;

double s_kappa(double kappa, double t) {
    const double u = kappa * t * t;
    if (std::abs(u) < 1e-8) {
        // sin/sinh series in kappa*t^2; keeps smoothness across kappa = 0.
        return t * (1.0 - u / 6.0 + u * u / 120.0);
    }
    if (kappa > 0) {
        const double r = std::sqrt(kappa);
        return std::sin(r * t) / r;
    }
    const double r = std::sqrt(-kappa);
    return std::sinh(r * t) / r;
}

double c_kappa(double kappa, double t) {
    const double u = kappa * t * t;
    if (std::abs(u) < 1e-8) return 1.0 - u / 2.0 + u * u / 24.0;
    if (kappa > 0) return std::cos(std::sqrt(kappa) * t);
    return std::cosh(std::sqrt(-kappa) * t);
}

CurvatureTriple::CurvatureTriple(double K_, double N_, double D_)
    : K(K_), N(N_), D(D_) {
    if (std::isnan(K) || std::isnan(N) || std::isnan(D) || !(D > 0.0))
        throw DomainError("CurvatureTriple: need finite K, N and D > 0");
    const bool d_finite = std::isfinite(D);
    if (N > 0.0 && N < 1.0) {
        tag_ = CaseTag::Excluded;
        reason_ = "N in (0,1): the J-integral in H is not continuous";
        return;
    }
    if (std::isinf(N)) {
        if (K > 0) tag_ = d_finite ? CaseTag::Case2 : CaseTag::Case1;
        else if (K == 0) tag_ = CaseTag::Case3;
        else { // K < 0
            if (d_finite) tag_ = CaseTag::Case2;
            else {
                tag_ = CaseTag::Excluded;
                reason_ = "N = inf, K < 0, D = inf: profile degenerates to 0";
            }
        }
        return;
    }
    if (N > 1.0) {
        if (K > 0) tag_ = CaseTag::Case4;
        else if (K == 0) tag_ = CaseTag::Case5;
        else if (d_finite) tag_ = CaseTag::Case6;
        else {
            tag_ = CaseTag::Excluded;
            reason_ = "N in (1,inf), K < 0, D = inf: H-integral not continuous";
        }
        return;
    }
    if (N == 1.0) {
        if (K == 0) tag_ = CaseTag::Case5; // J = 1, uniform model, profile theta
        else {
            tag_ = CaseTag::Excluded;
            reason_ = "N = 1, K != 0: J is identically infinite";
        }
        return;
    }
    // N <= 0
    if (K > 0) tag_ = CaseTag::Case7;
    else if (K == 0) {
        if (N == 0.0) {
            tag_ = CaseTag::Excluded;
            reason_ = "N = 0, K = 0: profile is identically 0";
        } else {
            tag_ = CaseTag::Case8;
        }
    } else { // K < 0, delta = K/(N-1) > 0
        const double dlt = K / (N - 1.0);
        if (d_finite && D < M_PI / std::sqrt(dlt)) tag_ = CaseTag::Case9;
        else {
            tag_ = CaseTag::Excluded;
            reason_ = "N <= 0, K < 0 needs D < pi/sqrt(delta)";
        }
    }
}

double CurvatureTriple::delta() const {
    if (N == 1.0 || std::isinf(N))
        throw DomainError("delta undefined for N in {1, inf}");
    return K / (N - 1.0);
}

void CurvatureTriple::require_valid() const {
    if (excluded())
        throw ExcludedTripleError("excluded triple: " + reason_);
}

double j_eval(double H, double K, double N, double t) {
    if (std::isinf(N)) return std::exp(H * t - 0.5 * K * t * t);
    if (N == 1.0) return K == 0.0 ? 1.0 : kInf;
    const double dlt = K / (N - 1.0);
    const double base = c_kappa(dlt, t) + H / (N - 1.0) * s_kappa(dlt, t);
    if (base <= 0.0) return N > 1.0 ? 0.0 : kInf;
    return std::exp((N - 1.0) * std::log(base));
}

Interval j_positivity_window(double H, double K, double N) {
    const double dlt = K / (N - 1.0);
    const double h = H / (N - 1.0); // base = c_dlt(t) + h * s_dlt(t)
    if (dlt > 0) {
        const double c = std::sqrt(dlt);
        // base = sin(beta + c t)/sin(beta), beta = acot(h/c) in (0, pi)
        const double beta = std::atan2(1.0, h / c); // atan2(1,x) = acot(x) on (0,pi)
        return {-beta / c, (M_PI - beta) / c};
    }
    if (dlt == 0) {
        if (h > 0) return {-1.0 / h, kInf};
        if (h < 0) return {-kInf, -1.0 / h};
        return {-kInf, kInf};
    }
    const double c = std::sqrt(-dlt);
    const double w = h / c; // base = cosh(ct) + w sinh(ct)
    if (std::abs(w) <= 1.0) return {-kInf, kInf};
    const double t0 = std::atanh(-1.0 / w) / c; // single zero
    if (w > 1.0) return {t0, kInf};
    return {-kInf, t0};
}

double j_integral(double H, double K, double N, double lo, double hi,
                  Tolerance tol) {
    if (!(lo < hi)) return 0.0;
    if (std::isinf(N)) {
        auto f = [&](double t) { return std::exp(H * t - 0.5 * K * t * t); };
        if (std::isfinite(lo) && std::isfinite(hi))
            return integrate(f, {lo, hi}, tol);
        // Upper-infinite tails (the only infinite windows the profiles use):
        // convergence is known analytically per branch.
        if (K < 0.0) return kInf;
        if (K == 0.0 && H >= 0.0) return kInf;
        const double scale =
            K > 0.0 ? std::max(1.0 / std::sqrt(K), std::abs(H) / K)
                    : 1.0 / std::abs(H);
        return integrate(f, {lo, hi}, tol, {scale, true});
    }
    if (N == 1.0) {
        if (K != 0.0) return kInf;
        return hi - lo; // J = 1
    }
    const Interval bump = j_positivity_window(H, K, N);
    if (N < 1.0) {
        // J = +inf outside the bump; any excess makes the integral diverge.
        const bool left_out = std::isfinite(bump.lo) && lo < bump.lo;
        const bool right_out = std::isfinite(bump.hi) && hi > bump.hi;
        if (left_out || right_out) return kInf;
        if (!std::isfinite(lo) && std::isfinite(bump.lo)) return kInf;
        if (!std::isfinite(hi) && std::isfinite(bump.hi)) return kInf;
    }
    const double a = std::max(lo, bump.lo);
    const double b = std::min(hi, bump.hi);
    if (!(a < b)) return 0.0; // window misses the bump entirely (N > 1)
    auto f = [&](double t) { return j_eval(H, K, N, t); };
    if (std::isfinite(a) && std::isfinite(b)) return integrate(f, {a, b}, tol);

    // Unbounded clipped window: decide the tail analytically.
    const double dlt = K / (N - 1.0);
    const double h = H / (N - 1.0);
    if (dlt < 0) {
        const double c = std::sqrt(-dlt);
        const double w = h / c;
        if (N > 1.0) {
            // base grows like e^{c|t|} except along w = -1 (upper tail)
            // where J = e^{(N-1)c t} decays.
            if (b == kInf && w != -1.0) return kInf;
            if (a == -kInf && w != 1.0) return kInf;
        }
        // N < 1: base growth makes J decay at rate |N-1| c.
        const double scale = 1.0 / (std::abs(N - 1.0) * c);
        return integrate(f, {a, b}, tol, {scale, true});
    }
    if (dlt == 0) {
        // base = 1 + h t on a half-line: power behavior t^{N-1}.
        if (N > 1.0) return kInf; // grows or is constant
        if (N >= 0.0) return kInf; // t^{N-1} with N-1 >= -1: non-integrable
        const double scale = h != 0.0 ? 1.0 / std::abs(h) : 1.0;
        return integrate(f, {a, b}, tol, {scale, true});
    }
    // dlt > 0 has a bounded bump; unreachable here.
    return integrate(f, {a, b}, tol);
}

SConcaveParam::SConcaveParam(double s_) : s(s_) {
    if (!(s <= 1.0)) throw DomainError("SConcaveParam: need s <= 1");
}

Density1D s_model_density(SConcaveParam p, Tolerance tol) {
    const double s = p.s;
    if (s == 0.0) return exponential_density();
    const double expo = (1.0 - s) / s;
    const Interval sup = s > 0 ? Interval{0.0, 1.0 / s} : Interval{0.0, kInf};
    auto psi = [s, expo](double x) { return -expo * std::log(1.0 - s * x); };
    auto psi_p = [s](double x) { return (1.0 - s) / (1.0 - s * x); };
    std::ostringstream name;
    name << "s-concave:" << s;
    return Density1D(sup, psi, psi_p, std::nullopt, tol, name.str());
}

double s_model_epsilon_profile(SConcaveParam p, double eps, double theta) {
    if (!(eps >= 0.0 && eps < 1.0))
        throw DomainError("s_model_epsilon_profile: eps outside [0,1)");
    if (!(theta >= 0.0 && theta <= 1.0))
        throw DomainError("s_model_epsilon_profile: theta outside [0,1]");
    const double s = p.s;
    if (s == 0.0) return 1.0 - std::pow(1.0 - theta, 1.0 / (1.0 - eps));
    if (theta == 1.0) return 1.0;
    const double core = (std::pow(1.0 - theta, s) - eps) / (1.0 - eps);
    if (core <= 0.0) return 1.0; // only reachable for s > 0
    return 1.0 - std::pow(core, 1.0 / s);
}

Density1D exponential_density() {
    return Density1D({0.0, kInf}, [](double x) { return x; },
                     [](double) { return 1.0; }, std::nullopt, {},
                     "exponential");
}

Density1D gaussian_density(double K) {
    if (!(K > 0)) throw DomainError("gaussian preset: need K > 0");
    return Density1D({-kInf, kInf},
                     [K](double x) { return 0.5 * K * x * x; },
                     [K](double x) { return K * x; }, std::nullopt, {},
                     "gaussian");
}

Density1D power_density(double N) {
    if (N >= 0.0 && N <= 1.0)
        throw DomainError("power preset: need N > 1 or N < 0");
    std::ostringstream name;
    name << "power:" << N;
    if (N > 1.0) {
        // (-t)^{N-1} on [-1, 0]: the K = 0, finite-N model.
        return Density1D({-1.0, 0.0},
                         [N](double t) { return -(N - 1.0) * std::log(-t); },
                         [N](double t) { return -(N - 1.0) / t; },
                         std::nullopt, {}, name.str());
    }
    // t^{N-1} on [1, inf): the K = 0, negative-N model.
    return Density1D({1.0, kInf},
                     [N](double t) { return (1.0 - N) * std::log(t); },
                     [N](double t) { return (1.0 - N) / t; }, std::nullopt, {},
                     name.str());
}

Density1D sin_power_density(double K, double N) {
    if (N == 1.0 || std::isinf(N)) throw DomainError("sin-power: bad N");
    const double dlt = K / (N - 1.0);
    if (!(dlt > 0)) throw DomainError("sin-power: needs K/(N-1) > 0");
    const double c = std::sqrt(dlt);
    // Full bump for N > 1; middle half-window for N <= 0 where the bump
    // endpoints are non-integrable.
    const Interval sup = N > 1.0
                             ? Interval{0.0, M_PI / c}
                             : Interval{0.25 * M_PI / c, 0.75 * M_PI / c};
    std::ostringstream name;
    name << "sin-power:" << K << "," << N;
    return Density1D(sup,
                     [N, c](double t) { return -(N - 1.0) * std::log(std::sin(c * t)); },
                     [N, c](double t) { return -(N - 1.0) * c / std::tan(c * t); },
                     std::nullopt, {}, name.str());
}

Density1D sinh_power_density(double K, double N) {
    if (N == 1.0 || std::isinf(N)) throw DomainError("sinh-power: bad N");
    const double dlt = K / (N - 1.0);
    if (!(dlt < 0)) throw DomainError("sinh-power: needs K/(N-1) < 0");
    const double c = std::sqrt(-dlt);
    std::ostringstream name;
    name << "sinh-power:" << K << "," << N;
    if (N > 1.0) {
        // sinh^{N-1}(-ct) on [-1, 0] (K < 0 model near its vanishing end).
        return Density1D({-1.0, 0.0},
                         [N, c](double t) { return -(N - 1.0) * std::log(std::sinh(-c * t)); },
                         [N, c](double t) { return (N - 1.0) * c / std::tanh(-c * t); },
                         std::nullopt, {}, name.str());
    }
    // sinh^{N-1}(ct) on [1, inf) (K > 0, N <= 0 model; integrable tail).
    return Density1D({1.0, kInf},
                     [N, c](double t) { return -(N - 1.0) * std::log(std::sinh(c * t)); },
                     [N, c](double t) { return -(N - 1.0) * c / std::tanh(c * t); },
                     std::nullopt, {}, name.str());
}

Density1D cosh_power_density(double K, double N) {
    if (N == 1.0 || std::isinf(N)) throw DomainError("cosh-power: bad N");
    const double dlt = K / (N - 1.0);
    if (!(dlt < 0)) throw DomainError("cosh-power: needs K/(N-1) < 0");
    const double c = std::sqrt(-dlt);
    const Interval sup =
        N > 1.0 ? Interval{-1.0, 1.0} : Interval{-kInf, kInf};
    std::ostringstream name;
    name << "cosh-power:" << K << "," << N;
    return Density1D(sup,
                     [N, c](double t) { return -(N - 1.0) * std::log(std::cosh(c * t)); },
                     [N, c](double t) { return -(N - 1.0) * c * std::tanh(c * t); },
                     std::nullopt, {}, name.str());
}

Density1D uniform_density(double D) {
    if (!(D > 0) || !std::isfinite(D))
        throw DomainError("uniform preset: need finite D > 0");
    return Density1D({0.0, D}, [](double) { return 0.0; },
                     [](double) { return 0.0; }, std::nullopt, {}, "uniform");
}

namespace {

std::vector<double> parse_params(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "inf") out.push_back(kInf);
        else if (item == "-inf") out.push_back(-kInf);
        else out.push_back(std::stod(item));
    }
    return out;
}

} // namespace

Density1D preset_density(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string rest =
        colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto params = parse_params(rest);
    auto need = [&](std::size_t n) {
        if (params.size() != n)
            throw DomainError("preset '" + head + "' expects " +
                              std::to_string(n) + " parameter(s)");
    };
    if (head == "exponential") { need(0); return exponential_density(); }
    if (head == "gaussian") { need(1); return gaussian_density(params[0]); }
    if (head == "s-concave") { need(1); return s_model_density(SConcaveParam(params[0])); }
    if (head == "power") { need(1); return power_density(params[0]); }
    if (head == "sin-power") { need(2); return sin_power_density(params[0], params[1]); }
    if (head == "sinh-power") { need(2); return sinh_power_density(params[0], params[1]); }
    if (head == "cosh-power") { need(2); return cosh_power_density(params[0], params[1]); }
    if (head == "uniform") { need(1); return uniform_density(params[0]); }
    throw DomainError("unknown density preset: " + head);
}

} // namespace dilation::model
