#pragma once

#include <cstdint>

namespace pricing::sim {

/**
 * Counter-based deterministic RNG. Every draw is addressed by
 * (replication, trajectory, time, slot) and hashed independently, so
 * identical seeds reproduce bit-identical streams on any platform and
 * parallel generation is order-independent.
 */
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// Uniform in [0, 1) for the addressed draw.
    double uniform(std::uint64_t replication, std::uint64_t trajectory, std::uint64_t t,
                   std::uint64_t slot) const;

    std::uint64_t bits(std::uint64_t replication, std::uint64_t trajectory, std::uint64_t t,
                       std::uint64_t slot) const;

private:
    std::uint64_t seed_;
};

/// Poisson(lambda) sample by inversion (sequential CDF search) from a
/// single uniform draw. Exact for the moderate rates used here.
int poisson_inverse_cdf(double lambda, double u);

/// Demand draw for the addressed stream. Throws on invalid lambda.
int sample_demand(double lambda, const SeededRng& rng, std::uint64_t replication,
                  std::uint64_t trajectory, std::uint64_t t, std::uint64_t slot);

}  // namespace pricing::sim
