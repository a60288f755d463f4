#include "pricing/estimate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pricing::ident {

double delta(long n, double c) {
    if (n < 1) throw std::invalid_argument("delta: count must be >= 1");
    if (!(c >= 0.0)) throw std::invalid_argument("delta: c must be non-negative");
    const double floored = static_cast<double>(std::max(n, 2L));
    return c * std::sqrt(std::log(floored) / static_cast<double>(n));
}

std::vector<int> LambdaEstimates::observed(int t) const {
    std::vector<int> out;
    for (int k = 0; k < num_prices(); ++k)
        if (counts[t][k] > 0) out.push_back(k);
    return out;
}

double LambdaEstimates::delta_at(int t, int k) const {
    if (counts[t][k] <= 0) throw std::invalid_argument("delta_at: price unobserved at this period");
    return delta(counts[t][k], c);
}

LambdaEstimates estimate_lambdas(const sim::OfflineDataset& dataset, double c) {
    if (dataset.size() < 1) throw std::invalid_argument("estimate_lambdas: empty dataset");
    const int T = dataset.horizon, K = dataset.num_prices();

    LambdaEstimates est;
    est.horizon = T;
    est.prices = dataset.prices;
    est.c = c;
    est.counts.assign(T, std::vector<long>(K, 0));
    est.lambda_hat.assign(T, std::vector<double>(K, std::numeric_limits<double>::quiet_NaN()));

    std::vector<std::vector<long>> sums(T, std::vector<long>(K, 0));
    for (const auto& traj : dataset.trajectories) {
        for (int t = 0; t < T; ++t) {
            const auto& s = traj.steps[t];
            est.counts[t][s.price_index] += 1;
            sums[t][s.price_index] += s.demand;
        }
    }
    // Conditional mean demand per price: divide by the per-price count.
    for (int t = 0; t < T; ++t)
        for (int k = 0; k < K; ++k)
            if (est.counts[t][k] > 0)
                est.lambda_hat[t][k] =
                    static_cast<double>(sums[t][k]) / static_cast<double>(est.counts[t][k]);
    return est;
}

}  // namespace pricing::ident
