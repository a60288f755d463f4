#pragma once

#include <vector>

namespace pricing {

/**
 * Finite-horizon Poisson-demand pricing model.
 *
 * T periods, inventory cap L (states 0..L, no replenishment), a strictly
 * increasing grid of K positive prices, and per-period demand rates
 * lambda[t][k] for period t (0-based) and price index k. Demand at a price is
 * Poisson with the corresponding rate, independent of the inventory level.
 * Rates are bounded by [lambda_min, lambda_max] and are non-increasing in the
 * price (higher price, lower demand).
 */
struct PricingModel {
    int horizon = 0;        // T
    int max_inventory = 0;  // L
    std::vector<double> prices;
    std::vector<std::vector<double>> lambda;  // [t][price index]
    double lambda_min = 0.0;
    double lambda_max = 0.0;

    int num_prices() const { return static_cast<int>(prices.size()); }
    double rate(int t, int k) const { return lambda[t][k]; }

    /// Throws std::invalid_argument when any structural invariant fails.
    void validate() const;
};

/// The synthetic market used by the experiment defaults: T=4, L=15,
/// prices {8, 9, 10}, time-constant rates {6, 4, 2.5}, bounds [1, 10].
PricingModel default_model();

/// Convenience constructor for time-constant demand rates.
PricingModel make_model(int horizon, int max_inventory, std::vector<double> prices,
                        std::vector<double> rates, double lambda_min, double lambda_max);

}  // namespace pricing
