#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dilation/entropy.hpp"
#include "dilation/epsbounds.hpp"
#include "dilation/errors.hpp"
#include "dilation/expr.hpp"
#include "dilation/measure1d.hpp"
#include "dilation/model.hpp"
#include "dilation/parallel.hpp"
#include "dilation/profiles.hpp"
#include "dilation/verify.hpp"

namespace {

using dilation::numerics::kInf;
using nlohmann::json;

std::string fmt9(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// Deterministic 9-significant-digit floats for the JSON outputs too.
double round9(double v) {
    if (!std::isfinite(v)) return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::strtod(buf, nullptr);
}

double parse_real(const std::string& s) {
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    return std::stod(s);
}

std::vector<double> parse_grid(const std::string& spec) {
    // "a:b:n" -> n values from a to b inclusive.
    std::stringstream ss(spec);
    std::string a, b, n;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') ||
        !std::getline(ss, n, ':'))
        throw dilation::DomainError("grid spec must be a:b:n");
    const double lo = parse_real(a), hi = parse_real(b);
    const int count = std::stoi(n);
    if (count < 1) throw dilation::DomainError("grid needs n >= 1");
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i)
        g[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    return g;
}

// Measure specs: preset names (see model::preset_density) or
// "expr:<psi>:<lo>:<hi>" with a log-density expression in x.
dilation::measure1d::Density1D parse_measure(const std::string& spec) {
    if (spec.rfind("expr:", 0) == 0) {
        const auto body = spec.substr(5);
        const auto p1 = body.rfind(':');
        const auto p2 = body.rfind(':', p1 == std::string::npos ? p1 : p1 - 1);
        if (p1 == std::string::npos || p2 == std::string::npos)
            throw dilation::DomainError(
                "expr measure spec is expr:<psi>:<lo>:<hi>");
        const std::string text = body.substr(0, p2);
        const double lo = parse_real(body.substr(p2 + 1, p1 - p2 - 1));
        const double hi = parse_real(body.substr(p1 + 1));
        auto psi = dilation::expr::compile(text);
        auto psi_prime = [psi](double x) {
            const double h = 1e-6 * (1.0 + std::abs(x));
            return (psi(x + h) - psi(x - h)) / (2.0 * h);
        };
        return dilation::measure1d::Density1D({lo, hi}, psi, psi_prime,
                                              std::nullopt, {}, "expr");
    }
    return dilation::model::preset_density(spec);
}

// Test functions: an expression in x; monotonicity breakpoints detected by
// sampling sign changes of the derivative on the quantile grid.
dilation::entropy::TestFunction parse_function(
    const std::string& text, const dilation::measure1d::Density1D& mu) {
    auto f = dilation::expr::compile(text);
    auto xs = mu.quantile_grid(129);
    std::vector<double> flips;
    int prev = 0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double d = f(xs[i + 1]) - f(xs[i]);
        const int sign = d > 1e-14 ? 1 : (d < -1e-14 ? -1 : 0);
        if (sign != 0 && prev != 0 && sign != prev)
            flips.push_back(0.5 * (xs[i] + xs[i + 1]));
        if (sign != 0) prev = sign;
    }
    if (flips.empty()) return dilation::entropy::TestFunction::monotone(f);
    if (flips.size() == 1)
        return dilation::entropy::TestFunction::unimodal(f, flips[0]);
    return dilation::entropy::TestFunction::piecewise(f, flips);
}

struct Output {
    std::string path;    // empty = stdout
    std::string format;  // csv | json

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream os(path);
        if (!os) throw dilation::DomainError("cannot open output: " + path);
        os << text;
    }
};

std::string table_csv(const std::vector<double>& th,
                      const std::vector<std::pair<std::string,
                                                  std::vector<double>>>& cols) {
    std::ostringstream os;
    os << "theta,value,method\n";
    for (std::size_t i = 0; i < th.size(); ++i)
        for (const auto& [method, vals] : cols)
            os << fmt9(th[i]) << "," << fmt9(vals[i]) << "," << method << "\n";
    return os.str();
}

std::string table_json(const std::vector<double>& th,
                       const std::vector<std::pair<std::string,
                                                   std::vector<double>>>& cols) {
    json rows = json::array();
    for (std::size_t i = 0; i < th.size(); ++i)
        for (const auto& [method, vals] : cols)
            rows.push_back({{"theta", round9(th[i])},
                            {"value", round9(vals[i])},
                            {"method", method}});
    return rows.dump(2) + "\n";
}

int cmd_profile(const std::string& Ks, const std::string& Ns,
                const std::string& Ds, const std::string& grid,
                const Output& out) {
    dilation::model::CurvatureTriple triple(parse_real(Ks), parse_real(Ns),
                                            parse_real(Ds));
    auto thetas = parse_grid(grid);
    std::vector<double> vcase(thetas.size()), vgen(thetas.size());
    dilation::parallel_for(thetas.size(), [&](std::size_t i) {
        vcase[i] = dilation::profiles::cdd_profile_case(triple, thetas[i]);
        vgen[i] = dilation::profiles::cdd_profile_general(triple, thetas[i]);
    });
    const std::vector<std::pair<std::string, std::vector<double>>> cols = {
        {"cdd-case", vcase}, {"cdd-general", vgen}};
    out.write(out.format == "json" ? table_json(thetas, cols)
                                   : table_csv(thetas, cols));
    return 0;
}

int cmd_flat(const std::string& measure, const std::string& window,
             const std::string& grid, const Output& out) {
    auto mu = parse_measure(measure);
    const auto colon = window.find(':');
    if (colon == std::string::npos)
        throw dilation::DomainError("interval must be lo:hi");
    const double lo = parse_real(window.substr(0, colon));
    const double hi = parse_real(window.substr(colon + 1));
    dilation::profiles::FlatDensity fd(
        [&mu](double t) { return -mu.psi(t); }, lo, hi);
    auto thetas = parse_grid(grid);
    std::vector<double> vals(thetas.size());
    dilation::parallel_for(thetas.size(), [&](std::size_t i) {
        vals[i] = fd.profile(thetas[i]);
    });
    const std::vector<std::pair<std::string, std::vector<double>>> cols = {
        {"flat", vals}};
    out.write(out.format == "json" ? table_json(thetas, cols)
                                   : table_csv(thetas, cols));
    return 0;
}

int cmd_dilate(const std::string& measure, const std::string& union_json,
               double eps, const Output& out) {
    auto mu = parse_measure(measure);
    auto A = dilation::measure1d::IntervalUnion::from_json(union_json);
    auto res = dilation::measure1d::epsilon_dilate(A, eps);
    json comps = json::array();
    for (const auto& c : res.dilated.components())
        comps.push_back({round9(c.lo), round9(c.hi)});
    json obj = {{"dilated", comps},
                {"eps", eps},
                {"exact", res.exact},
                {"measure_before",
                 round9(dilation::measure1d::measure(mu, A))},
                {"measure_after",
                 round9(dilation::measure1d::measure(mu, res.dilated))}};
    out.write(obj.dump(2) + "\n");
    return 0;
}

int cmd_bound(const std::string& Ks, const std::string& Ns,
              const std::string& Ds, double theta, double eps,
              const std::string& table_path, const Output& out) {
    dilation::model::CurvatureTriple triple(parse_real(Ks), parse_real(Ns),
                                            parse_real(Ds));
    auto pipeline = dilation::epsbounds::build_pipeline(triple);
    const double thr = pipeline.admissible_threshold(eps);
    json obj = {{"K", Ks}, {"N", Ns}, {"D", Ds},
                {"theta", theta}, {"eps", eps},
                {"admissible_threshold", round9(thr)}};
    if (triple.K != 0.0)
        obj["assumption_A"] = "empirically verified, not proven";
    if (!table_path.empty()) {
        std::ofstream ts(table_path);
        if (!ts)
            throw dilation::DomainError("cannot open table: " + table_path);
        pipeline.dump_csv(ts);
    }
    const double v = pipeline.epsilon_bound(theta, eps); // may throw
    obj["value"] = round9(v);
    out.write(obj.dump(2) + "\n");
    return 0;
}

int cmd_entropy(const std::string& measure, const std::string& rho_expr,
                const std::string& Ns, const Output& out) {
    auto mu = parse_measure(measure);
    auto rho = parse_function(rho_expr, mu);
    const double N = parse_real(Ns);
    auto rep = dilation::entropy::entropy_bound_check(mu, rho, N);
    json obj = {{"measure", measure}, {"rho", rho_expr}, {"N", Ns},
                {"entropy", round9(rep.lhs)}, {"uprime", round9(rep.rhs)},
                {"pass", rep.pass}};
    out.write(obj.dump(2) + "\n");
    return 0;
}

int cmd_remez(const std::string& measure, const std::string& f_expr,
              const std::string& sgrid, const Output& out) {
    auto mu = parse_measure(measure);
    auto f = parse_function(f_expr, mu);
    auto ss = parse_grid(sgrid);
    std::vector<double> vals(ss.size());
    dilation::parallel_for(ss.size(), [&](std::size_t i) {
        vals[i] = dilation::entropy::measured_remez(mu, f, ss[i]).C;
    });
    const std::vector<std::pair<std::string, std::vector<double>>> cols = {
        {"remez", vals}};
    out.write(out.format == "json" ? table_json(ss, cols)
                                   : table_csv(ss, cols));
    return 0;
}

int cmd_verify(const std::string& suite, const Output& out) {
    auto results = dilation::verify::run_suites(suite);
    json arr = json::array();
    bool all = true;
    for (const auto& r : results) {
        arr.push_back(r.to_json());
        all = all && r.pass;
    }
    out.write(arr.dump(2) + "\n");
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dilation profiles, epsilon-bounds and entropy checks for "
                 "one-dimensional weighted measures"};
    app.require_subcommand(1);
    app.fallthrough();

    Output out;
    app.add_option("--output", out.path, "write results to a file");
    out.format = "csv";
    app.add_option("--format", out.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    std::string Ks, Ns, Ds, grid = "0.1:0.9:9", measure, arg1, arg2;
    double theta = 0.5, eps = 0.5;

    auto* profile = app.add_subcommand("profile", "CDD profile table");
    profile->add_option("K", Ks)->required();
    profile->add_option("N", Ns)->required();
    profile->add_option("D", Ds)->required();
    profile->add_option("--grid", grid, "theta grid a:b:n");

    auto* flat = app.add_subcommand("flat", "flat dilation profile table");
    flat->add_option("measure", measure)->required();
    flat->add_option("interval", arg1, "window lo:hi")->required();
    flat->add_option("--grid", grid, "theta grid a:b:n");

    auto* dilate = app.add_subcommand("dilate", "epsilon-dilate a union");
    dilate->add_option("measure", measure)->required();
    dilate->add_option("union", arg1, "JSON array of [lo,hi]")->required();
    dilate->add_option("eps", eps)->required();

    auto* bound = app.add_subcommand("bound", "epsilon-dilation bound");
    bound->add_option("K", Ks)->required();
    bound->add_option("N", Ns)->required();
    bound->add_option("D", Ds)->required();
    bound->add_option("theta", theta)->required();
    bound->add_option("eps", eps)->required();
    std::string table;
    bound->add_option("--table", table,
                      "also dump the (theta, Dtilde, I, Finv) CSV here");

    auto* ent = app.add_subcommand("entropy", "entropy bound check");
    ent->add_option("measure", measure)->required();
    ent->add_option("rho", arg1, "density expression in x")->required();
    ent->add_option("N", Ns)->required();

    auto* remez = app.add_subcommand("remez", "measured Remez table");
    remez->add_option("measure", measure)->required();
    remez->add_option("f", arg1, "expression in x")->required();
    std::string sgrid = "1.5:4:6";
    remez->add_option("--s-grid", sgrid, "s grid a:b:n");

    auto* ver = app.add_subcommand("verify", "run a named acceptance suite");
    ver->add_option("suite", arg2, "suite name or 'all'")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*profile) return cmd_profile(Ks, Ns, Ds, grid, out);
        if (*flat) return cmd_flat(measure, arg1, grid, out);
        if (*dilate) return cmd_dilate(measure, arg1, eps, out);
        if (*bound) return cmd_bound(Ks, Ns, Ds, theta, eps, table, out);
        if (*ent) return cmd_entropy(measure, arg1, Ns, out);
        if (*remez) return cmd_remez(measure, arg1, sgrid, out);
        if (*ver) return cmd_verify(arg2, out);
    } catch (const std::exception& e) {
        json err = {{"error", {{"type", typeid(e).name()},
                               {"message", e.what()}}}};
        std::cout << err.dump(2) << "\n";
        return 1;
    }
    return 2;
}
