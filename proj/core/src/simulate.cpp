#include "pricing/simulate.hpp"

#include <algorithm>
#include <stdexcept>

namespace pricing::sim {

int OfflineDataset::count(int t, int k) const {
    int n = 0;
    for (const auto& traj : trajectories) n += (traj.steps[t].price_index == k) ? 1 : 0;
    return n;
}

std::vector<int> OfflineDataset::observed(int t) const {
    std::vector<int> out;
    std::vector<char> seen(prices.size(), 0);
    for (const auto& traj : trajectories) seen[traj.steps[t].price_index] = 1;
    for (std::size_t k = 0; k < prices.size(); ++k)
        if (seen[k]) out.push_back(static_cast<int>(k));
    return out;
}

int OfflineDataset::max_demand() const {
    int m = 0;
    for (const auto& traj : trajectories)
        for (const auto& s : traj.steps) m = std::max(m, s.demand);
    return m;
}

OfflineDataset generate_dataset(const PricingModel& model, const PolicyTable& behavior, int n,
                                const SeededRng& rng, std::uint64_t replication) {
    model.validate();
    behavior.validate();
    if (n < 1) throw std::invalid_argument("generate_dataset: n must be >= 1");
    if (behavior.horizon() != model.horizon || behavior.max_inventory() != model.max_inventory ||
        behavior.num_prices() != model.num_prices())
        throw std::invalid_argument("generate_dataset: behavior shape does not match the model");

    const int T = model.horizon, L = model.max_inventory, K = model.num_prices();
    OfflineDataset ds;
    ds.horizon = T;
    ds.max_inventory = L;
    ds.prices = model.prices;
    ds.seed = rng.seed();
    ds.replication = replication;
    ds.trajectories.resize(n);

    for (int i = 0; i < n; ++i) {
        auto& traj = ds.trajectories[i];
        traj.steps.resize(T);
        int x = L;
        for (int t = 0; t < T; ++t) {
            const double ua = rng.uniform(replication, i, t, 0);
            int k = K - 1;
            double cum = 0.0;
            for (int j = 0; j < K; ++j) {
                cum += behavior.prob(t, x, j);
                if (ua < cum) {
                    k = j;
                    break;
                }
            }
            // Demand is drawn and recorded even when x = 0: it does not
            // depend on the inventory, and estimation uses every pair.
            const int d = sample_demand(model.rate(t, k), rng, replication, i, t, 1);
            traj.steps[t] = {x, k, d};
            x -= std::min(x, d);
        }
    }
    return ds;
}

PolicyTable scenario_behavior(const PricingModel& model, int scenario) {
    model.validate();
    const int T = model.horizon, L = model.max_inventory, K = model.num_prices();

    if (scenario == 4) {
        auto pol = solve_optimal(model).policy;
        return pol;
    }
    if (scenario == 5) {
        auto pol = solve_worst(model).policy;
        return pol;
    }
    if (scenario < 1 || scenario > 5)
        throw std::invalid_argument("scenario_behavior: scenario must be in 1..5");
    if (K != 3)
        throw std::invalid_argument("scenario_behavior: scenarios 1-3 need a three-price grid");

    int skipped = 0;
    switch (scenario) {
        case 1: skipped = 2; break;  // highest price unobserved
        case 2: skipped = 1; break;  // middle price unobserved
        case 3: skipped = 0; break;  // lowest price unobserved
    }
    PolicyTable pi(T, L, K);
    for (int t = 0; t < T; ++t)
        for (int x = 0; x <= L; ++x)
            for (int k = 0; k < K; ++k) pi.set_prob(t, x, k, k == skipped ? 0.0 : 0.5);
    return pi;
}

PolicyTable make_suboptimal_policy(const PricingModel& model, int excluded_price_index) {
    model.validate();
    const int K = model.num_prices();
    if (excluded_price_index < 0 || excluded_price_index >= K)
        throw std::invalid_argument("make_suboptimal_policy: price index out of range");
    if (K < 2) throw std::invalid_argument("make_suboptimal_policy: need at least two prices");

    const auto opt = solve_optimal(model).policy;
    PolicyTable pi(model.horizon, model.max_inventory, K);
    const double split = 1.0 / (K - 1);
    for (int t = 0; t < model.horizon; ++t) {
        for (int x = 0; x <= model.max_inventory; ++x) {
            const int a = opt.one_hot_action(t, x);
            if (a == excluded_price_index) {
                for (int k = 0; k < K; ++k)
                    pi.set_prob(t, x, k, k == excluded_price_index ? 0.0 : split);
            } else {
                pi.set_one_hot(t, x, a);
            }
        }
    }
    return pi;
}

}  // namespace pricing::sim
