#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace mwr {

struct SlackBudget {
    double solver = 0.0;
    double interpolation = 0.0;
    double quadrature = 0.0;
    double total() const { return solver + interpolation + quadrature; }
};

struct CheckRecord {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // lhs - rhs unless the check defines otherwise
    std::string verdict; // pass | inconclusive | fail | info
};

/// Outcome of one inequality-verification experiment. A slack violation
/// within the budget passes; within twice the budget it is reported as
/// inconclusive (refine h); beyond that it fails.
struct ComparisonReport {
    std::string experiment;
    nlohmann::json config_echo;
    std::vector<CheckRecord> checks;
    double min_slack = 0.0;
    SlackBudget slack_budget;
    std::vector<nlohmann::json> witnesses;
    double runtime_seconds = 0.0;

    void add_check(const std::string& name, double lhs, double rhs, double slack, double eps);
    void add_info(const std::string& name, double lhs, double rhs, double slack);
    void finalize();

    bool all_pass() const;
    bool any_fail() const;
    bool any_inconclusive() const;
    /// 0 all pass, 1 any fail, 2 any inconclusive.
    int exit_code() const;

    nlohmann::json to_json() const;
    std::string to_csv() const;
};

std::string verdict_for(double slack, double eps);

}  // namespace mwr
