#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pricing/model.hpp"
#include "pricing/tables.hpp"

namespace pricing {

namespace sim {
class SeededRng;
}

/**
 * One-step action value for inventory x, price a and demand rate lambda:
 * expected revenue a*E[min(D,x)] plus the expected continuation value
 * sum_{d=0}^{x-1} v_next[x-d] * P(D=d). Returns exactly 0 at x = 0
 * (boundary condition). The infinite part of the revenue sum is evaluated
 * through the tail mass, so there is no truncation error.
 *
 * v_next must cover inventory levels 0..x.
 */
double bellman_q(int x, double price, double lambda, std::span<const double> v_next);

/// bellman_q for every inventory level 0..max_inventory at once (shared
/// pmf prefix; identical rounding to per-x calls).
std::vector<double> bellman_q_column(double price, double lambda, std::span<const double> v_next,
                                     int max_inventory);

struct Solution {
    QTable q;
    ValueTable v;
    PolicyTable policy;
};

/// Backward induction over the full price grid; the policy is the one-hot
/// argmax of Q with ties broken toward the higher price.
Solution solve_optimal(const PricingModel& model);

/// Same recursion with min/argmin (ties toward the lower price); used as
/// the adversarial baseline behavior.
Solution solve_worst(const PricingModel& model);

struct PolicyValue {
    ValueTable v;
    double initial_value = 0.0;  // E over the initial inventory law of v row 0
};

/// Exact fixed-policy evaluation: V^pi by backward induction with Q rows
/// averaged by pi_t(a|x).
PolicyValue evaluate_policy_exact(const PricingModel& model, const PolicyTable& policy,
                                  const StateDistribution& init);
PolicyValue evaluate_policy_exact(const PricingModel& model, const PolicyTable& policy);

/**
 * Exact forward propagation of the inventory distribution under a policy:
 * X_{t+1} = X_t - min(X_t, D_t), inventory 0 absorbing. Returns T+1
 * distributions; entry t is the law of X_t (entry 0 = init).
 */
std::vector<StateDistribution> forward_state_distribution(const PricingModel& model,
                                                          const PolicyTable& policy,
                                                          const StateDistribution& init);

/// Marginal law of the price charged at each period under a policy,
/// computed from the exact state distribution. Shape [t][price index].
std::vector<std::vector<double>> price_marginals(const PricingModel& model,
                                                 const PolicyTable& policy,
                                                 const StateDistribution& init);

struct McValue {
    double mean = 0.0;
    double std_error = 0.0;
    int rollouts = 0;
};

/// Monte Carlo policy value over independent rollouts (used by the `mc`
/// evaluation mode; exact evaluation is the default elsewhere).
McValue evaluate_policy_mc(const PricingModel& model, const PolicyTable& policy, int rollouts,
                           const sim::SeededRng& rng, const StateDistribution& init);

}  // namespace pricing
