#include "mwr/report.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace mwr {

std::string verdict_for(double slack, double eps) {
    if (slack >= -eps) return "pass";
    if (slack >= -2.0 * eps) return "inconclusive";
    return "fail";
}

void ComparisonReport::add_check(const std::string& name, double lhs, double rhs, double slack, double eps) {
    checks.push_back({name, lhs, rhs, slack, verdict_for(slack, eps)});
}

void ComparisonReport::add_info(const std::string& name, double lhs, double rhs, double slack) {
    checks.push_back({name, lhs, rhs, slack, "info"});
}

void ComparisonReport::finalize() {
    min_slack = std::numeric_limits<double>::infinity();
    for (const CheckRecord& c : checks)
        if (c.verdict != "info") min_slack = std::min(min_slack, c.slack);
    if (!std::isfinite(min_slack)) min_slack = 0.0;
}

bool ComparisonReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckRecord& c) { return c.verdict == "pass" || c.verdict == "info"; });
}

bool ComparisonReport::any_fail() const {
    return std::any_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.verdict == "fail"; });
}

bool ComparisonReport::any_inconclusive() const {
    return std::any_of(checks.begin(), checks.end(),
                       [](const CheckRecord& c) { return c.verdict == "inconclusive"; });
}

int ComparisonReport::exit_code() const { return any_fail() ? 1 : any_inconclusive() ? 2 : 0; }

nlohmann::json ComparisonReport::to_json() const {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["config_echo"] = config_echo;
    j["checks"] = nlohmann::json::array();
    for (const CheckRecord& c : checks) {
        j["checks"].push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"slack", c.slack},
                               {"verdict", c.verdict}});
    }
    j["min_slack"] = min_slack;
    j["slack_budget"] = {{"solver", slack_budget.solver},
                         {"interpolation", slack_budget.interpolation},
                         {"quadrature", slack_budget.quadrature}};
    j["witnesses"] = witnesses;
    j["runtime_seconds"] = runtime_seconds;
    return j;
}

std::string ComparisonReport::to_csv() const {
    std::ostringstream os;
    os << "name,lhs,rhs,slack,verdict\n";
    os.precision(17);
    for (const CheckRecord& c : checks)
        os << c.name << ',' << c.lhs << ',' << c.rhs << ',' << c.slack << ',' << c.verdict << '\n';
    return os.str();
}

}  // namespace mwr
