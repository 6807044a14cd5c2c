#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qheat {

struct CriterionInfo {
    int id;
    const char* tag;
    const char* summary;
    double budget_seconds;
};

struct CriterionResult {
    int id = 0;
    std::string tag;
    bool pass = false;
    double seconds = 0.0;
    std::vector<std::string> details;  // one line per individual check
};

const std::vector<CriterionInfo>& acceptance_criteria();

// Accepts a number ("4") or a tag ("suq2-oracle"); throws std::invalid_argument otherwise.
int criterion_id(const std::string& key);

CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids);

// "PASS  4 suq2-oracle (0.41 s)" followed by indented detail lines when verbose.
void print_result(const CriterionResult& r, std::ostream& os, bool verbose);

}  // namespace qheat
