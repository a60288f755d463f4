#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pricing/estimate.hpp"

namespace pricing::ident {

/// Own-price uncertainty band [lambda_hat - delta, lambda_hat + delta],
/// clamped into the [lambda_min, lambda_max] box.
struct Band {
    double lower = 0.0;
    double upper = 0.0;
};

/// Band for an observed (t, price) cell; throws std::invalid_argument for
/// unobserved cells.
Band clipped_bounds(const LambdaEstimates& est, int t, int k, double lambda_min,
                    double lambda_max);

/**
 * Neighbor-based bounds for an unobserved price: the lower bound borrows the
 * band floor of the closest observed price above, the upper bound the band
 * ceiling of the closest observed price below; missing neighbors fall back to
 * lambda_min / lambda_max. Sampling noise can make lower > upper; the result
 * is flagged via valid(), not repaired.
 */
struct CrudeInterval {
    double lower = 0.0;
    double upper = 0.0;
    std::optional<int> lower_source;  // price index above, if any
    std::optional<int> upper_source;  // price index below, if any
    bool valid() const { return lower <= upper; }
};

CrudeInterval crude_interval(const LambdaEstimates& est, int t, int k, double lambda_min,
                             double lambda_max);

/// Identified interval for one (t, price) cell with provenance: which
/// observed price supplied each endpoint (absent on a lambda_min/lambda_max
/// fallback), and whether an empty intersection was clamped shut.
struct PriceInterval {
    double lower = 0.0;
    double upper = 0.0;
    std::optional<int> lower_source;
    std::optional<int> upper_source;
    bool clamped = false;
};

struct IntervalSet {
    int horizon = 0;
    std::vector<double> prices;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    std::vector<std::vector<PriceInterval>> cells;  // [t][k]

    int num_prices() const { return static_cast<int>(prices.size()); }
    const PriceInterval& at(int t, int k) const { return cells[t][k]; }
    std::span<const PriceInterval> row(int t) const { return cells[t]; }
};

/**
 * Pooled intervals for every price, observed or not: the lower bound is the
 * largest band floor among observed prices >= a (demand at a is at least the
 * demand at any higher price), the upper bound the smallest band ceiling
 * among observed prices <= a; fallbacks lambda_min / lambda_max when a side
 * has no observed prices. If pooling produces lower > upper, the lower bound
 * is clamped down to the upper and the cell is flagged.
 */
IntervalSet refined_intervals(const LambdaEstimates& est, double lambda_min, double lambda_max);

/// Probability that some price in the support of the behavior marginal is
/// missed by all n trajectories: sum over support of (1 - p)^n.
double kappa_t(std::span<const double> marginal, int n);
std::vector<double> kappa(const std::vector<std::vector<double>>& marginals, int n);

}  // namespace pricing::ident
