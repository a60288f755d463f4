#include "pricing/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pricing::ident {

Band clipped_bounds(const LambdaEstimates& est, int t, int k, double lambda_min,
                    double lambda_max) {
    if (!est.is_observed(t, k))
        throw std::invalid_argument("clipped_bounds: price unobserved at this period");
    const double lh = est.lambda_hat[t][k];
    const double d = est.delta_at(t, k);
    // Box clamp (not just one-sided clips) so lower <= upper always holds,
    // even when every recorded demand at the price was zero.
    Band b;
    b.lower = std::clamp(lh - d, lambda_min, lambda_max);
    b.upper = std::clamp(lh + d, lambda_min, lambda_max);
    return b;
}

CrudeInterval crude_interval(const LambdaEstimates& est, int t, int k, double lambda_min,
                             double lambda_max) {
    if (est.is_observed(t, k))
        throw std::invalid_argument("crude_interval: targets unobserved prices only");

    CrudeInterval out;
    out.lower = lambda_min;
    out.upper = lambda_max;
    // Closest observed price above supplies the lower bound (its demand rate
    // is no larger), the closest below the upper bound.
    for (int j = k + 1; j < est.num_prices(); ++j) {
        if (est.is_observed(t, j)) {
            out.lower_source = j;
            out.lower = clipped_bounds(est, t, j, lambda_min, lambda_max).lower;
            break;
        }
    }
    for (int j = k - 1; j >= 0; --j) {
        if (est.is_observed(t, j)) {
            out.upper_source = j;
            out.upper = clipped_bounds(est, t, j, lambda_min, lambda_max).upper;
            break;
        }
    }
    return out;
}

IntervalSet refined_intervals(const LambdaEstimates& est, double lambda_min, double lambda_max) {
    if (!(lambda_min > 0.0) || !(lambda_max >= lambda_min))
        throw std::invalid_argument("refined_intervals: need 0 < lambda_min <= lambda_max");
    const int T = est.horizon, K = est.num_prices();

    IntervalSet set;
    set.horizon = T;
    set.prices = est.prices;
    set.lambda_min = lambda_min;
    set.lambda_max = lambda_max;
    set.cells.assign(T, std::vector<PriceInterval>(K));

    for (int t = 0; t < T; ++t) {
        std::vector<std::optional<Band>> bands(K);
        for (int k = 0; k < K; ++k)
            if (est.is_observed(t, k)) bands[k] = clipped_bounds(est, t, k, lambda_min, lambda_max);

        for (int k = 0; k < K; ++k) {
            PriceInterval cell;
            // Largest band floor among observed prices at or above k; the
            // nearest achiever is recorded as the source.
            cell.lower = lambda_min;
            for (int j = k; j < K; ++j) {
                if (bands[j] && (!cell.lower_source || bands[j]->lower > cell.lower)) {
                    cell.lower = bands[j]->lower;
                    cell.lower_source = j;
                }
            }
            // Smallest band ceiling among observed prices at or below k.
            cell.upper = lambda_max;
            for (int j = k; j >= 0; --j) {
                if (bands[j] && (!cell.upper_source || bands[j]->upper < cell.upper)) {
                    cell.upper = bands[j]->upper;
                    cell.upper_source = j;
                }
            }
            if (cell.lower > cell.upper) {
                cell.lower = cell.upper;
                cell.clamped = true;
            }
            set.cells[t][k] = cell;
        }
    }
    return set;
}

double kappa_t(std::span<const double> marginal, int n) {
    if (n < 0) throw std::invalid_argument("kappa_t: negative sample size");
    double sum_p = 0.0, out = 0.0;
    for (double p : marginal) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("kappa_t: probability out of [0,1]");
        sum_p += p;
        if (p > 0.0) out += std::pow(1.0 - p, n);
    }
    if (sum_p > 1.0 + 1e-9) throw std::invalid_argument("kappa_t: marginal mass exceeds 1");
    return out;
}

std::vector<double> kappa(const std::vector<std::vector<double>>& marginals, int n) {
    std::vector<double> out;
    out.reserve(marginals.size());
    for (const auto& row : marginals) out.push_back(kappa_t(row, n));
    return out;
}

}  // namespace pricing::ident
