#ifndef DILATION_VERIFY_HPP
#define DILATION_VERIFY_HPP

#include <string>
#include <vector>

#include "dilation/report.hpp"

namespace dilation::verify {

struct SuiteResult {
    std::string name;
    std::string title;
    std::vector<VerificationReport> reports;
    bool pass = false;
    double seconds = 0.0;

    nlohmann::json to_json() const;
};

/// Names of the named acceptance suites, in execution order.
const std::vector<std::string>& suite_names();

/// Runs one named suite ("all" runs every suite).
std::vector<SuiteResult> run_suites(const std::string& name);

} // namespace dilation::verify

#endif
