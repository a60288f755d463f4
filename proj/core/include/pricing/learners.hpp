#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pricing/intervals.hpp"
#include "pricing/simulate.hpp"
#include "pricing/tables.hpp"

namespace pricing::learn {

enum class Method { greedy, vanilla_pess, refined_pess, opportunistic };
std::string method_name(Method m);

/// Raised by the observed-price-only learners when some period has no
/// observed prices at all (possible only for hand-built datasets).
struct UnlearnableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LearnerConfig {
    double c = 1.0;
    int grid_points = 1001;  // endpoint-inclusive uniform grid over each interval
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

enum class OptMode { minimum, maximum };

struct IntervalOptimum {
    double value = 0.0;
    double lambda = 0.0;
};

/**
 * Extremum of the one-step Q over a rate interval by grid search on an
 * endpoint-inclusive uniform grid (Q is generally non-monotone in the rate,
 * so no shape assumption is made; the Lipschitz property bounds the grid
 * error). A degenerate interval returns the single evaluation; ties keep the
 * smallest grid rate. Throws on an invalid interval (lower > upper).
 */
IntervalOptimum optimize_q_over_interval(int x, double price, double lower, double upper,
                                         std::span<const double> v_next, OptMode mode,
                                         int grid_points);

// ---------------------------------------------------------------------------
// Single-period backup kernels. The learners iterate these backwards over t;
// they are exposed so that injected intervals and continuation values can be
// analyzed directly.
// ---------------------------------------------------------------------------

struct PessimisticStep {
    std::vector<double> q;             // worst-case Q per price
    std::vector<double> lambda_choice; // minimizing rate per price
    int action = 0;                    // argmax of q, ties to the higher price
};

/// Worst-case backup over pooled intervals, all prices admissible.
PessimisticStep pessimistic_backup(std::span<const double> prices,
                                   std::span<const ident::PriceInterval> intervals,
                                   std::span<const double> v_next, int x, int grid_points);

struct OpportunisticStep {
    std::vector<double> worst_q;
    std::vector<double> best_q;
    std::vector<double> regret;        // max-regret per price (>= 0)
    std::vector<double> lambda_choice; // regret-achieving (Q-minimizing) rate
    int action = 0;                    // argmin of regret, ties to the higher price
};

/**
 * Minimax-regret backup: per price, the largest advantage any rival can
 * attain over it when each rate ranges over its own interval,
 *   regret(a) = max(0, max_{a' != a} best_q(a') - worst_q(a)).
 * The rival maximization excludes a itself (a single rate cannot beat its
 * own worst case). The step value is worst_q at the chosen action.
 */
OpportunisticStep opportunistic_backup(std::span<const double> prices,
                                       std::span<const ident::PriceInterval> intervals,
                                       std::span<const double> v_next, int x, int grid_points);

struct BandStep {
    std::vector<double> q;  // NaN for inadmissible prices
    int action = 0;
};

/// Worst-case backup over own-price bands, restricted to observed prices
/// (bands absent elsewhere). Throws UnlearnableError when no price has a band.
BandStep band_pessimistic_backup(std::span<const double> prices,
                                 std::span<const std::optional<ident::Band>> bands,
                                 std::span<const double> v_next, int x, int grid_points);

/// Plug-in backup at the point estimates, restricted to observed prices.
BandStep greedy_backup(std::span<const double> prices,
                       std::span<const std::optional<double>> lambda_hat,
                       std::span<const double> v_next, int x);

// ---------------------------------------------------------------------------
// Full learners
// ---------------------------------------------------------------------------

struct LearnerOutput {
    Method method = Method::greedy;
    PolicyTable policy;
    ValueTable v;
    QTable q;              // the method's own criterion table (NaN where not admissible)
    QTable lambda_choice;  // populated for refined_pess and opportunistic
    QTable regret_matrix;  // populated for opportunistic
    std::vector<std::vector<int>> observed;  // admissible price indices per t
};

/// Plug-in backward induction restricted to observed prices.
LearnerOutput learn_greedy(const sim::OfflineDataset& dataset, const LearnerConfig& config);

/// Worst-case backward induction over own-price uncertainty bands,
/// restricted to observed prices.
LearnerOutput learn_vanilla_pessimistic(const sim::OfflineDataset& dataset,
                                        const LearnerConfig& config);

/// Worst-case backward induction over pooled intervals; every price is
/// admissible, so this learner never fails.
LearnerOutput learn_refined_pessimistic(const sim::OfflineDataset& dataset,
                                        const LearnerConfig& config);
LearnerOutput learn_refined_pessimistic(const ident::IntervalSet& intervals, int max_inventory,
                                        int grid_points);

/// Minimax-regret backward induction over pooled intervals.
LearnerOutput learn_opportunistic(const sim::OfflineDataset& dataset,
                                  const LearnerConfig& config);
LearnerOutput learn_opportunistic(const ident::IntervalSet& intervals, int max_inventory,
                                  int grid_points);

}  // namespace pricing::learn
