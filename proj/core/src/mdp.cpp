#include "pricing/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pricing/poisson.hpp"
#include "pricing/rng.hpp"

namespace pricing {

double bellman_q(int x, double price, double lambda, std::span<const double> v_next) {
    if (x < 0) throw std::invalid_argument("bellman_q: negative inventory");
    if (x == 0) return 0.0;
    if (!std::isfinite(lambda) || lambda <= 0.0)
        throw std::invalid_argument("bellman_q: lambda must be finite and positive");
    if (static_cast<int>(v_next.size()) < x + 1)
        throw std::invalid_argument("bellman_q: continuation row too short");

    const PoissonPrefix pre = poisson_pmf_prefix(lambda, x);
    double dsum = 0.0;
    for (int d = 1; d <= x; ++d) dsum += d * pre.probs[d];
    const double immediate = price * (dsum + x * pre.tail);
    double future = 0.0;
    for (int d = 0; d < x; ++d) future += v_next[x - d] * pre.probs[d];
    return immediate + future;
}

std::vector<double> bellman_q_column(double price, double lambda, std::span<const double> v_next,
                                     int max_inventory) {
    if (!std::isfinite(lambda) || lambda <= 0.0)
        throw std::invalid_argument("bellman_q_column: lambda must be finite and positive");
    if (static_cast<int>(v_next.size()) < max_inventory + 1)
        throw std::invalid_argument("bellman_q_column: continuation row too short");

    const PoissonPrefix pre = poisson_pmf_prefix(lambda, max_inventory);
    std::vector<double> out(static_cast<std::size_t>(max_inventory) + 1, 0.0);
    double cdf = pre.probs[0];
    double dsum = 0.0;
    for (int x = 1; x <= max_inventory; ++x) {
        cdf += pre.probs[x];
        dsum += x * pre.probs[x];
        const double tail = std::clamp(1.0 - cdf, 0.0, 1.0);
        const double immediate = price * (dsum + x * tail);
        double future = 0.0;
        for (int d = 0; d < x; ++d) future += v_next[x - d] * pre.probs[d];
        out[x] = immediate + future;
    }
    return out;
}

namespace {

Solution solve_extremal(const PricingModel& model, bool maximize) {
    model.validate();
    const int T = model.horizon, L = model.max_inventory, K = model.num_prices();
    Solution s{QTable(T, L, K), ValueTable(T, L), PolicyTable(T, L, K)};
    s.policy.deterministic = true;

    for (int t = T - 1; t >= 0; --t) {
        const auto v_next = s.v.row(t + 1);
        std::vector<std::vector<double>> cols(K);
        for (int k = 0; k < K; ++k)
            cols[k] = bellman_q_column(model.prices[k], model.rate(t, k), v_next, L);
        for (int x = 0; x <= L; ++x) {
            int arg = 0;
            double best = cols[0][x];
            for (int k = 1; k < K; ++k) {
                const double q = cols[k][x];
                // max: ties go to the higher price; min: ties to the lower.
                if (maximize ? (q >= best) : (q < best)) {
                    best = q;
                    arg = k;
                }
            }
            for (int k = 0; k < K; ++k) s.q.at(t, x, k) = cols[k][x];
            s.v.at(t, x) = best;
            s.policy.set_one_hot(t, x, arg);
        }
    }
    return s;
}

}  // namespace

Solution solve_optimal(const PricingModel& model) { return solve_extremal(model, true); }

Solution solve_worst(const PricingModel& model) { return solve_extremal(model, false); }

PolicyValue evaluate_policy_exact(const PricingModel& model, const PolicyTable& policy,
                                  const StateDistribution& init) {
    model.validate();
    policy.validate();
    init.validate();
    const int T = model.horizon, L = model.max_inventory, K = model.num_prices();
    if (policy.horizon() != T || policy.max_inventory() != L || policy.num_prices() != K)
        throw std::invalid_argument("evaluate_policy_exact: policy shape mismatch");
    if (init.max_inventory() != L)
        throw std::invalid_argument("evaluate_policy_exact: init shape mismatch");

    PolicyValue out{ValueTable(T, L), 0.0};
    for (int t = T - 1; t >= 0; --t) {
        const auto v_next = out.v.row(t + 1);
        std::vector<std::vector<double>> cols(K);
        for (int k = 0; k < K; ++k)
            cols[k] = bellman_q_column(model.prices[k], model.rate(t, k), v_next, L);
        for (int x = 0; x <= L; ++x) {
            double v = 0.0;
            for (int k = 0; k < K; ++k) {
                const double p = policy.prob(t, x, k);
                if (p > 0.0) v += p * cols[k][x];
            }
            out.v.at(t, x) = v;
        }
    }
    for (int x = 0; x <= L; ++x) out.initial_value += init.mass[x] * out.v.at(0, x);
    return out;
}

PolicyValue evaluate_policy_exact(const PricingModel& model, const PolicyTable& policy) {
    return evaluate_policy_exact(model, policy, point_mass(model.max_inventory, model.max_inventory));
}

std::vector<StateDistribution> forward_state_distribution(const PricingModel& model,
                                                          const PolicyTable& policy,
                                                          const StateDistribution& init) {
    model.validate();
    policy.validate();
    init.validate();
    const int T = model.horizon, L = model.max_inventory, K = model.num_prices();
    if (init.max_inventory() != L)
        throw std::invalid_argument("forward_state_distribution: init shape mismatch");

    std::vector<StateDistribution> out;
    out.reserve(T + 1);
    out.push_back(init);
    for (int t = 0; t < T; ++t) {
        const auto& cur = out.back().mass;
        StateDistribution next;
        next.mass.assign(static_cast<std::size_t>(L) + 1, 0.0);
        next.mass[0] += cur[0];  // absorbing
        for (int x = 1; x <= L; ++x) {
            const double m = cur[x];
            if (m == 0.0) continue;
            for (int k = 0; k < K; ++k) {
                const double p = policy.prob(t, x, k);
                if (p == 0.0) continue;
                const PoissonPrefix pre = poisson_pmf_prefix(model.rate(t, k), x);
                for (int d = 0; d < x; ++d) next.mass[x - d] += m * p * pre.probs[d];
                next.mass[0] += m * p * (pre.probs[x] + pre.tail);
            }
        }
        out.push_back(std::move(next));
    }
    return out;
}

std::vector<std::vector<double>> price_marginals(const PricingModel& model,
                                                 const PolicyTable& policy,
                                                 const StateDistribution& init) {
    const auto dists = forward_state_distribution(model, policy, init);
    const int T = model.horizon, L = model.max_inventory, K = model.num_prices();
    std::vector<std::vector<double>> out(T, std::vector<double>(K, 0.0));
    for (int t = 0; t < T; ++t)
        for (int x = 0; x <= L; ++x)
            for (int k = 0; k < K; ++k) out[t][k] += dists[t].mass[x] * policy.prob(t, x, k);
    return out;
}

McValue evaluate_policy_mc(const PricingModel& model, const PolicyTable& policy, int rollouts,
                           const sim::SeededRng& rng, const StateDistribution& init) {
    model.validate();
    policy.validate();
    init.validate();
    if (rollouts < 1) throw std::invalid_argument("evaluate_policy_mc: rollouts must be >= 1");

    // Dedicated stream tag so rollouts never collide with dataset draws.
    constexpr std::uint64_t kEvalStream = 0x6d632d6576616cULL;
    const int T = model.horizon, L = model.max_inventory, K = model.num_prices();

    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < rollouts; ++i) {
        // initial inventory
        double u = rng.uniform(kEvalStream, i, 0, 2);
        int x = L;
        double acc = 0.0;
        for (int level = 0; level <= L; ++level) {
            acc += init.mass[level];
            if (u < acc) {
                x = level;
                break;
            }
        }
        double total = 0.0;
        for (int t = 0; t < T; ++t) {
            const double ua = rng.uniform(kEvalStream, i, t, 0);
            int k = K - 1;
            double cum = 0.0;
            for (int j = 0; j < K; ++j) {
                cum += policy.prob(t, x, j);
                if (ua < cum) {
                    k = j;
                    break;
                }
            }
            const double ud = rng.uniform(kEvalStream, i, t, 1);
            const int d = sim::poisson_inverse_cdf(model.rate(t, k), ud);
            const int sold = std::min(x, d);
            total += sold * model.prices[k];
            x -= sold;
        }
        sum += total;
        sum_sq += total * total;
    }
    McValue out;
    out.rollouts = rollouts;
    out.mean = sum / rollouts;
    const double var = std::max(0.0, (sum_sq - sum * sum / rollouts) / std::max(1, rollouts - 1));
    out.std_error = std::sqrt(var / rollouts);
    return out;
}

}  // namespace pricing
