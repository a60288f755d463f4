#pragma once

#include <span>
#include <vector>

namespace pricing {

/// Dense real table indexed by (t, x, price index). Used for Q-functions
/// and per-cell diagnostics (worst-case rates, regret matrices).
class QTable {
public:
    QTable() = default;
    QTable(int horizon, int max_inventory, int num_prices, double fill = 0.0)
        : T_(horizon), L_(max_inventory), K_(num_prices),
          v_(static_cast<std::size_t>(horizon) * (max_inventory + 1) * num_prices, fill) {}

    double& at(int t, int x, int k) { return v_[idx(t, x, k)]; }
    double at(int t, int x, int k) const { return v_[idx(t, x, k)]; }

    int horizon() const { return T_; }
    int max_inventory() const { return L_; }
    int num_prices() const { return K_; }
    bool empty() const { return v_.empty(); }

private:
    std::size_t idx(int t, int x, int k) const {
        return (static_cast<std::size_t>(t) * (L_ + 1) + x) * K_ + k;
    }
    int T_ = 0, L_ = 0, K_ = 0;
    std::vector<double> v_;
};

/// Value function rows for t = 0..T; the final row (t = T) is identically
/// zero, matching the terminal boundary condition.
class ValueTable {
public:
    ValueTable() = default;
    ValueTable(int horizon, int max_inventory)
        : T_(horizon), L_(max_inventory),
          v_(static_cast<std::size_t>(horizon + 1) * (max_inventory + 1), 0.0) {}

    double& at(int t, int x) { return v_[idx(t, x)]; }
    double at(int t, int x) const { return v_[idx(t, x)]; }
    std::span<const double> row(int t) const {
        return {v_.data() + idx(t, 0), static_cast<std::size_t>(L_ + 1)};
    }
    std::span<double> row(int t) {
        return {v_.data() + idx(t, 0), static_cast<std::size_t>(L_ + 1)};
    }

    int horizon() const { return T_; }
    int max_inventory() const { return L_; }
    bool empty() const { return v_.empty(); }

private:
    std::size_t idx(int t, int x) const { return static_cast<std::size_t>(t) * (L_ + 1) + x; }
    int T_ = 0, L_ = 0;
    std::vector<double> v_;
};

/// Markov pricing policy pi_t(a | x): one probability row per (t, x).
class PolicyTable {
public:
    PolicyTable() = default;
    PolicyTable(int horizon, int max_inventory, int num_prices)
        : T_(horizon), L_(max_inventory), K_(num_prices),
          p_(static_cast<std::size_t>(horizon) * (max_inventory + 1) * num_prices, 0.0) {}

    double prob(int t, int x, int k) const { return p_[idx(t, x, k)]; }
    std::span<const double> row(int t, int x) const {
        return {p_.data() + idx(t, x, 0), static_cast<std::size_t>(K_)};
    }
    void set_prob(int t, int x, int k, double p) { p_[idx(t, x, k)] = p; }
    void set_one_hot(int t, int x, int k);

    /// Index of the sole action with probability 1; throws if the row is
    /// not one-hot.
    int one_hot_action(int t, int x) const;

    bool deterministic = false;

    int horizon() const { return T_; }
    int max_inventory() const { return L_; }
    int num_prices() const { return K_; }
    bool empty() const { return p_.empty(); }

    /// Every row must be a probability vector (sum 1 within 1e-12,
    /// entries >= 0); throws std::invalid_argument otherwise.
    void validate() const;

private:
    std::size_t idx(int t, int x, int k) const {
        return (static_cast<std::size_t>(t) * (L_ + 1) + x) * K_ + k;
    }
    int T_ = 0, L_ = 0, K_ = 0;
    std::vector<double> p_;
};

/// Probability mass over inventory levels 0..L.
struct StateDistribution {
    std::vector<double> mass;

    int max_inventory() const { return static_cast<int>(mass.size()) - 1; }
    /// Throws unless entries are non-negative and sum to 1 within 1e-12.
    void validate() const;
};

/// Point mass at inventory level x.
StateDistribution point_mass(int max_inventory, int x);

}  // namespace pricing
