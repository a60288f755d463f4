#pragma once

#include <vector>

#include "pricing/simulate.hpp"

namespace pricing::ident {

/**
 * Uncertainty width for a cell with n observations: c * sqrt(log(max(n,2))/n).
 * The floor at log 2 keeps singleton cells at a positive width. Throws on
 * n == 0.
 */
double delta(long n, double c);

/// Per-(t, price) demand-rate estimates from an offline dataset.
/// lambda_hat[t][k] is the mean demand over the N_t(a) trajectories charging
/// that price; cells with no observations hold NaN.
struct LambdaEstimates {
    int horizon = 0;
    std::vector<double> prices;
    std::vector<std::vector<long>> counts;        // [t][k]
    std::vector<std::vector<double>> lambda_hat;  // [t][k], NaN if unobserved
    double c = 1.0;

    int num_prices() const { return static_cast<int>(prices.size()); }
    bool is_observed(int t, int k) const { return counts[t][k] > 0; }
    std::vector<int> observed(int t) const;
    /// delta(N_t(a), c); throws for unobserved cells.
    double delta_at(int t, int k) const;
};

LambdaEstimates estimate_lambdas(const sim::OfflineDataset& dataset, double c);

}  // namespace pricing::ident
