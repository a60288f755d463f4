#pragma once

#include <cstdint>
#include <vector>

#include "pricing/mdp.hpp"
#include "pricing/model.hpp"
#include "pricing/rng.hpp"
#include "pricing/tables.hpp"

namespace pricing::sim {

struct TrajectoryStep {
    int inventory;    // X_t before the sale
    int price_index;  // index into the price grid
    int demand;       // D_t, recorded uncensored
};

struct Trajectory {
    std::vector<TrajectoryStep> steps;  // length T
};

/**
 * Offline dataset: N trajectories of (inventory, price, demand) triples plus
 * the market description they were generated under. Demand is recorded even
 * when it exceeds the inventory (and when inventory is zero): the demand law
 * does not depend on the inventory, and estimation uses all (price, demand)
 * pairs. Rewards are implied as min(demand, inventory) * price and are not
 * stored.
 */
struct OfflineDataset {
    int horizon = 0;
    int max_inventory = 0;
    std::vector<double> prices;
    std::vector<Trajectory> trajectories;

    std::uint64_t seed = 0;
    std::uint64_t replication = 0;
    int scenario = 0;

    int size() const { return static_cast<int>(trajectories.size()); }
    int num_prices() const { return static_cast<int>(prices.size()); }

    /// N_t(a): number of trajectories charging price index k at period t.
    int count(int t, int k) const;
    /// Observed price indices at period t (positive counts), ascending.
    std::vector<int> observed(int t) const;
    /// Largest demand in the dataset (drives the data-driven rate cap).
    int max_demand() const;
};

/// Draws N independent trajectories under the behavior policy, all starting
/// from inventory max_inventory. Streams are addressed per (replication,
/// trajectory, period). Throws if n < 1.
OfflineDataset generate_dataset(const PricingModel& model, const PolicyTable& behavior, int n,
                                const SeededRng& rng, std::uint64_t replication = 0);

/**
 * The five benchmark behavior policies:
 *   1  skip the highest price, split 1/2-1/2 over the lower two
 *   2  skip the middle price, split over the outer two
 *   3  skip the lowest price, split over the upper two
 *   4  the exact optimal policy
 *   5  the exact value-minimizing policy
 * Scenarios 1-3 require a three-price grid and are inventory-independent.
 */
PolicyTable scenario_behavior(const PricingModel& model, int scenario);

/**
 * Stochastic perturbation of the optimal policy: wherever the optimal action
 * is the excluded price, the probability is split evenly over the remaining
 * prices; every other row stays one-hot optimal.
 */
PolicyTable make_suboptimal_policy(const PricingModel& model, int excluded_price_index);

}  // namespace pricing::sim
