#pragma once

#include <functional>
#include <string>
#include <vector>

namespace frobavg::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    double budget_seconds = 0;
};

struct TrendRow {
    int x;
    unsigned u;
    std::string classnumber_S;
    std::string main_term;
    double ratio;
};

int criterion_count();
/// Runs criterion `id` (1-based); exceptions are reported as failures.
CriterionResult run_criterion(int id, unsigned threads = 1);
/// Runs the listed criteria (all when empty), calling `on_result` after each.
std::vector<CriterionResult> run_all(const std::vector<int>& ids, unsigned threads,
                                     const std::function<void(const CriterionResult&)>& on_result = {});

/// The q = 5, a = 0 trend table behind the last criterion.
std::vector<TrendRow> trend_table(int x_max, unsigned threads);

std::string format_result(const CriterionResult& r);

}  // namespace frobavg::verify
