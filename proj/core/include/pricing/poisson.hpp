#pragma once

#include <vector>

namespace pricing {

/// Prefix of a Poisson(lambda) pmf: probs[d] = P(D = d) for d = 0..x,
/// plus the complementary tail mass P(D >= x+1).
struct PoissonPrefix {
    std::vector<double> probs;
    double tail = 0.0;
};

/**
 * Computes the pmf prefix by the multiplicative recurrence
 * p_d = p_{d-1} * lambda / d (no factorials, no overflow), with the tail
 * taken as the complement of the prefix sum, clamped into [0, 1].
 *
 * Throws std::invalid_argument unless lambda is finite and positive and
 * x >= 0.
 */
PoissonPrefix poisson_pmf_prefix(double lambda, int x);

/// E[min(D, x)] for D ~ Poisson(lambda): expected units sold from a stock
/// of x. Lies in [0, min(lambda, x)] and is non-decreasing in both arguments.
double expected_sales(double lambda, int x);

}  // namespace pricing
