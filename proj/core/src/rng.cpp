#include "pricing/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace pricing::sim {

namespace {

// splitmix64 finalizer; full avalanche per field.
inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t SeededRng::bits(std::uint64_t replication, std::uint64_t trajectory, std::uint64_t t,
                              std::uint64_t slot) const {
    std::uint64_t h = mix(seed_ ^ 0x243f6a8885a308d3ULL);
    h = mix(h ^ (replication + 0x9e3779b97f4a7c15ULL));
    h = mix(h ^ (trajectory + 0xc2b2ae3d27d4eb4fULL));
    h = mix(h ^ (t + 0x165667b19e3779f9ULL));
    h = mix(h ^ (slot + 0x27d4eb2f165667c5ULL));
    return h;
}

double SeededRng::uniform(std::uint64_t replication, std::uint64_t trajectory, std::uint64_t t,
                          std::uint64_t slot) const {
    return static_cast<double>(bits(replication, trajectory, t, slot) >> 11) * 0x1.0p-53;
}

int poisson_inverse_cdf(double lambda, double u) {
    if (!std::isfinite(lambda) || lambda <= 0.0)
        throw std::invalid_argument("poisson_inverse_cdf: lambda must be finite and positive");
    if (!(u >= 0.0 && u < 1.0)) throw std::invalid_argument("poisson_inverse_cdf: u out of [0,1)");

    // Sequential CDF search; exact for the moderate rates used here. The cap
    // guards against u landing in the rounded-away tail.
    const int cap = static_cast<int>(lambda + 60.0 * std::sqrt(lambda) + 120.0);
    double p = std::exp(-lambda);
    double cdf = p;
    int d = 0;
    while (u >= cdf && d < cap) {
        ++d;
        p *= lambda / d;
        cdf += p;
    }
    return d;
}

int sample_demand(double lambda, const SeededRng& rng, std::uint64_t replication,
                  std::uint64_t trajectory, std::uint64_t t, std::uint64_t slot) {
    return poisson_inverse_cdf(lambda, rng.uniform(replication, trajectory, t, slot));
}

}  // namespace pricing::sim
