#ifndef CARTIER_VERIFY_HPP
#define CARTIER_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace cartier::verify
{

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    // one-line description of what was checked and the outcome
    std::string summary;
    // deterministic record of the inputs and outcomes; no timings
    nlohmann::json artifact;
    double seconds = 0;
    // 0 when the criterion has no time limit
    double limit_seconds = 0;

    // passed and within the time limit
    bool ok() const
    {
        return passed && (limit_seconds <= 0 || seconds <= limit_seconds);
    }
};

// Criteria 1..11; criterion 12 (determinism) needs two runs and is handled
// by run_suite and by the acceptance driver.
const std::vector<int> &criterion_ids();
CriterionResult run_criterion(int id, std::uint64_t seed);

struct SuiteResult {
    std::vector<CriterionResult> criteria;
    bool all_ok() const;
};
// Runs 1..11 and, when check_determinism is set, a second time comparing the
// artifacts byte for byte as criterion 12.
SuiteResult run_suite(std::uint64_t seed, bool check_determinism);

// "criterion  3 PASS  12.3s  adic unicity: ..."
std::string format_line(const CriterionResult &r);

} // namespace cartier::verify

#endif
