#include "pricing/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pricing {

PoissonPrefix poisson_pmf_prefix(double lambda, int x) {
    if (!std::isfinite(lambda) || lambda <= 0.0)
        throw std::invalid_argument("poisson_pmf_prefix: lambda must be finite and positive");
    if (x < 0) throw std::invalid_argument("poisson_pmf_prefix: x must be non-negative");

    PoissonPrefix out;
    out.probs.resize(static_cast<std::size_t>(x) + 1);
    double p = std::exp(-lambda);
    double sum = p;
    out.probs[0] = p;
    for (int d = 1; d <= x; ++d) {
        p *= lambda / d;
        out.probs[d] = p;
        sum += p;
    }
    out.tail = std::clamp(1.0 - sum, 0.0, 1.0);
    return out;
}

double expected_sales(double lambda, int x) {
    if (x == 0) return 0.0;
    const PoissonPrefix pre = poisson_pmf_prefix(lambda, x);
    double s = 0.0;
    for (int d = 1; d <= x; ++d) s += d * pre.probs[d];
    return s + x * pre.tail;
}

}  // namespace pricing
