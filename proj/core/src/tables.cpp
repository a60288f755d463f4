#include "pricing/tables.hpp"

#include <cmath>
#include <stdexcept>

namespace pricing {

void PolicyTable::set_one_hot(int t, int x, int k) {
    for (int j = 0; j < K_; ++j) p_[idx(t, x, j)] = 0.0;
    p_[idx(t, x, k)] = 1.0;
}

int PolicyTable::one_hot_action(int t, int x) const {
    for (int k = 0; k < K_; ++k) {
        const double p = prob(t, x, k);
        if (p == 1.0) return k;
        if (p != 0.0) throw std::invalid_argument("policy row is not one-hot");
    }
    throw std::invalid_argument("policy row is not one-hot");
}

void PolicyTable::validate() const {
    for (int t = 0; t < T_; ++t) {
        for (int x = 0; x <= L_; ++x) {
            double sum = 0.0;
            for (int k = 0; k < K_; ++k) {
                const double p = prob(t, x, k);
                if (!(p >= 0.0)) throw std::invalid_argument("policy: negative probability");
                sum += p;
            }
            if (std::abs(sum - 1.0) > 1e-12)
                throw std::invalid_argument("policy: row does not sum to 1");
        }
    }
}

void StateDistribution::validate() const {
    double sum = 0.0;
    for (double m : mass) {
        if (!(m >= 0.0)) throw std::invalid_argument("state distribution: negative mass");
        sum += m;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("state distribution: mass does not sum to 1");
}

StateDistribution point_mass(int max_inventory, int x) {
    if (x < 0 || x > max_inventory) throw std::invalid_argument("point_mass: level out of range");
    StateDistribution d;
    d.mass.assign(static_cast<std::size_t>(max_inventory) + 1, 0.0);
    d.mass[x] = 1.0;
    return d;
}

}  // namespace pricing
