#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pricing/learners.hpp"
#include "pricing/mdp.hpp"

namespace pricing::analysis {

/**
 * Exact regret decomposition. With tables (Q-hat, V-hat) and policies
 * (pi-hat, reference pi*) held fixed, the regret of pi-hat relative to pi*
 * splits as mu = J1 - J2 + J3 where
 *   l_t(x,a) = (true one-step backup of V-hat_{t+1})(x,a) - Q-hat_t(x,a),
 *   J1 = sum_t E^{pi*}[l_t],  J2 = sum_t E^{pi-hat}[l_t],
 *   J3 = sum_t E^{pi*}[ sum_a Q-hat_t(X_t,a)(pi*_t(a|X_t) - pi-hat_t(a|X_t)) ].
 * The identity requires V-hat to be the pi-hat-average of Q-hat at t >= 1
 * and V-hat_T = 0; all learners satisfy this by construction. Expectations
 * are exact (forward state propagation), so the residual is at machine
 * precision.
 */
struct DecompositionReport {
    double mu = 0.0;
    double j1 = 0.0;
    double j2 = 0.0;
    double j3 = 0.0;
    double residual = 0.0;  // |mu - (j1 - j2 + j3)|
};

DecompositionReport decomposition_check(const PricingModel& model, const QTable& q_hat,
                                        const ValueTable& v_hat, const PolicyTable& pi_hat,
                                        const PolicyTable& pi_ref, const StateDistribution& init);
DecompositionReport decomposition_check(const PricingModel& model,
                                        const learn::LearnerOutput& learned,
                                        const PolicyTable& pi_ref, const StateDistribution& init);

/// Per-(t, price) ingredients of the two regret-bound terms.
struct BoundCell {
    int t = 0;
    int k = 0;
    double p_opt = 0.0;   // price marginal under the reference policy
    double p_beh = 0.0;   // price marginal under the behavior policy
    bool in_m = true;     // support-transfer condition p_opt > 0 => p_beh > 0
    long n = 0;           // N_t(a)
    double eta = 0.0;     // unobservability penalty (NaN when p_opt = 0 skips it)
};

/**
 * Numerical regret-bound components (multiplicative constants omitted):
 *   term1 = sum over covered cells of p_opt * sqrt(log N_t(a) / N_t(a)),
 *   term2 = sum over uncovered cells of p_opt * eta_t(a),
 * where eta combines the true-rate gap between the proxy prices with their
 * uncertainty widths. Also reports per-period kappa (probability some
 * supported price is missed entirely) and the probability floor
 * 1 - sum_t [ sum_a N_t(a)^{-1} + kappa_t ], which is typically vacuous at
 * small N and is reported as a diagnostic only.
 */
struct BoundReport {
    double term1 = 0.0;
    double term2 = 0.0;
    double probability_floor = 0.0;
    std::vector<double> kappa;  // per t
    std::vector<BoundCell> cells;
};

BoundReport bound_components(const PricingModel& model, const sim::OfflineDataset& dataset,
                             const ident::LambdaEstimates& estimates,
                             const std::vector<std::vector<double>>& opt_marginals,
                             const std::vector<std::vector<double>>& beh_marginals, double c);

/// Cellwise check that a worst-case Q-table really lower-bounds the exact
/// optimal Q. `tol` absorbs grid-search slack.
struct ValidityReport {
    long cells = 0;
    long violations = 0;
    double fraction_valid = 1.0;
    double worst_excess = 0.0;
};

ValidityReport pessimism_validity(const PricingModel& model, const learn::LearnerOutput& learned,
                                  double tol = 1e-6);

/// Empirical Lipschitz behavior of the one-step Q in the demand rate:
/// `constant` is the max finite-difference slope over a dense rate grid,
/// `worst_ratio` the max |dQ|/|d lambda| over the random sample pairs.
struct LipschitzReport {
    double constant = 0.0;
    double worst_ratio = 0.0;
};

LipschitzReport lipschitz_check(const PricingModel& model, int samples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Static (single-period, ample-stock) minimax-regret selection conditions for
// a three-price grid a1 > a2 > a3 with one unobserved price. Bounds are the
// own bands of the observed prices; the unobserved price borrows per the
// pooling rules. Each condition is sufficient for the minimax-regret choice
// to equal the corresponding price.
// ---------------------------------------------------------------------------

struct StaticBounds {
    std::array<double, 3> price{};  // descending: a1 > a2 > a3
    std::array<double, 3> lower{};  // band floors (entry for the unobserved price unused)
    std::array<double, 3> upper{};  // band ceilings (same)
};

enum class StaticCondition { m1, m2, m3 };  // which price is unobserved

bool static_condition_check(const StaticBounds& b, StaticCondition which, double lambda_min,
                            double lambda_max);

}  // namespace pricing::analysis
