#ifndef DILATION_REPORT_HPP
#define DILATION_REPORT_HPP

#include <string>

#include "json.hpp"

namespace dilation {

/// Structured pass/fail record of an inequality check. For multi-sample
/// checks lhs/rhs/margin describe the worst sampled pair. margin is the
/// signed slack: positive means the inequality held with room to spare.
struct VerificationReport {
    std::string check;
    nlohmann::json params = nlohmann::json::object();
    double lhs = 0.0;
    double rhs = 0.0;
    double tol = 0.0;
    bool pass = false;
    double margin = 0.0;

    nlohmann::json to_json() const {
        return nlohmann::json{{"check", check}, {"params", params},
                              {"lhs", lhs},     {"rhs", rhs},
                              {"tol", tol},     {"pass", pass},
                              {"margin", margin}};
    }
};

} // namespace dilation

#endif
