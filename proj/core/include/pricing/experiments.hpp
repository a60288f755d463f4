#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pricing/learners.hpp"
#include "pricing/mdp.hpp"

namespace pricing::exp {

enum class EvalMode { exact, mc };
std::string eval_mode_name(EvalMode m);

struct ExperimentConfig {
    PricingModel model = default_model();
    int scenario = 1;
    int n = 20;
    int replications = 100;
    double c = 1.0;
    int grid_points = 1001;
    std::uint64_t seed = 20250801;
    EvalMode eval = EvalMode::exact;
    int mc_rollouts = 5000;
    bool include_greedy = false;
    bool strict = false;
    /// Rate cap for estimation. By default it is re-derived per dataset as
    /// max(lambda_min, 1.5 * max observed demand); a fixed override skips
    /// the rule.
    std::optional<double> lambda_max_override;
    std::string out_dir;
    int threads = 0;  // 0 = hardware concurrency

    void validate() const;  // throws std::invalid_argument
};

struct ResultRow {
    int scenario = 0;
    std::string method;
    int replication = 0;
    double value = 0.0;
    double regret = 0.0;
    double runtime_ms = 0.0;
    bool failed = false;
    std::string error;
};

struct SummaryRow {
    int scenario = 0;
    std::string method;
    int count = 0;
    double mean = 0.0;
    double sd = 0.0;
    double min = 0.0;
    double q25 = 0.0;
    double median = 0.0;
    double q75 = 0.0;
    double max = 0.0;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;       // ordered by (replication, method)
    std::vector<SummaryRow> summary;   // per method
    double optimal_value = 0.0;        // exact value of the optimal policy
    EvalMode eval = EvalMode::exact;
};

/// Replication loop: generate data under the scenario behavior, fit the
/// learners, evaluate each learned policy, one row per (replication, method).
/// Replications run on a thread pool; output order is deterministic. A
/// learner failure becomes a failed row unless `strict` is set, in which
/// case it propagates.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct Table1Result {
    Solution solution;
    std::string rendered;  // fixed-width action table, rows x=1..L, cols t=1..T
};

/// Exact optimal pricing table for the configured model.
Table1Result run_table1(const ExperimentConfig& config);

struct SweepPoint {
    int n = 0;
    std::string method;
    double mean_regret = 0.0;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::map<std::string, double> slopes;  // least-squares log-log slope per method
};

/// Mean exact regret per dataset size, plus the fitted log(regret) vs log(n)
/// slope per method.
SweepResult run_regret_sweep(const ExperimentConfig& config, const std::vector<int>& n_values);

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

}  // namespace pricing::exp
