#include "pricing/learners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pricing/mdp.hpp"

namespace pricing::learn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> lambda_grid(double lower, double upper, int grid_points) {
    if (lower > upper) throw std::invalid_argument("lambda_grid: invalid interval");
    if (lower == upper) return {lower};
    if (grid_points < 2) throw std::invalid_argument("lambda_grid: need at least two points");
    std::vector<double> out(grid_points);
    const double width = upper - lower;
    for (int i = 0; i < grid_points; ++i)
        out[i] = lower + width * static_cast<double>(i) / (grid_points - 1);
    out.front() = lower;  // endpoints exact
    out.back() = upper;
    return out;
}

// Interval extrema of Q for every inventory level at once. Scanning is
// ascending in the rate with strict improvement, so the recorded rate is the
// smallest achiever, identical to optimize_q_over_interval per level.
struct ColumnExtrema {
    std::vector<double> worst, best, worst_lambda, best_lambda;
};

ColumnExtrema column_extrema(double price, double lower, double upper,
                             std::span<const double> v_next, int max_inventory,
                             int grid_points) {
    const auto grid = lambda_grid(lower, upper, grid_points);
    ColumnExtrema ext;
    const std::size_t n = static_cast<std::size_t>(max_inventory) + 1;
    ext.worst.assign(n, std::numeric_limits<double>::infinity());
    ext.best.assign(n, -std::numeric_limits<double>::infinity());
    ext.worst_lambda.assign(n, grid.front());
    ext.best_lambda.assign(n, grid.front());
    for (double lam : grid) {
        const auto col = bellman_q_column(price, lam, v_next, max_inventory);
        for (int x = 0; x <= max_inventory; ++x) {
            if (col[x] < ext.worst[x]) {
                ext.worst[x] = col[x];
                ext.worst_lambda[x] = lam;
            }
            if (col[x] > ext.best[x]) {
                ext.best[x] = col[x];
                ext.best_lambda[x] = lam;
            }
        }
    }
    return ext;
}

int argmax_tie_high(std::span<const double> values, std::span<const int> admissible) {
    int arg = admissible.front();
    double best = values[arg];
    for (int k : admissible) {
        if (values[k] >= best) {
            best = values[k];
            arg = k;
        }
    }
    return arg;
}

int argmin_tie_high(std::span<const double> values) {
    int arg = 0;
    double best = values[0];
    for (int k = 1; k < static_cast<int>(values.size()); ++k) {
        if (values[k] <= best) {
            best = values[k];
            arg = k;
        }
    }
    return arg;
}

std::vector<int> all_indices(int k) {
    std::vector<int> out(k);
    for (int i = 0; i < k; ++i) out[i] = i;
    return out;
}

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::greedy: return "greedy";
        case Method::vanilla_pess: return "vanilla_pess";
        case Method::refined_pess: return "refined_pess";
        case Method::opportunistic: return "opportunistic";
    }
    return "unknown";
}

IntervalOptimum optimize_q_over_interval(int x, double price, double lower, double upper,
                                         std::span<const double> v_next, OptMode mode,
                                         int grid_points) {
    const auto grid = lambda_grid(lower, upper, grid_points);
    IntervalOptimum out{mode == OptMode::minimum ? std::numeric_limits<double>::infinity()
                                                 : -std::numeric_limits<double>::infinity(),
                        grid.front()};
    for (double lam : grid) {
        const double q = bellman_q(x, price, lam, v_next);
        const bool improves = mode == OptMode::minimum ? (q < out.value) : (q > out.value);
        if (improves) {
            out.value = q;
            out.lambda = lam;
        }
    }
    return out;
}

PessimisticStep pessimistic_backup(std::span<const double> prices,
                                   std::span<const ident::PriceInterval> intervals,
                                   std::span<const double> v_next, int x, int grid_points) {
    const int K = static_cast<int>(prices.size());
    PessimisticStep step;
    step.q.resize(K);
    step.lambda_choice.resize(K);
    for (int k = 0; k < K; ++k) {
        const auto opt = optimize_q_over_interval(x, prices[k], intervals[k].lower,
                                                  intervals[k].upper, v_next,
                                                  OptMode::minimum, grid_points);
        step.q[k] = opt.value;
        step.lambda_choice[k] = opt.lambda;
    }
    const auto adm = all_indices(K);
    step.action = argmax_tie_high(step.q, adm);
    return step;
}

OpportunisticStep opportunistic_backup(std::span<const double> prices,
                                       std::span<const ident::PriceInterval> intervals,
                                       std::span<const double> v_next, int x, int grid_points) {
    const int K = static_cast<int>(prices.size());
    OpportunisticStep step;
    step.worst_q.resize(K);
    step.best_q.resize(K);
    step.regret.resize(K);
    step.lambda_choice.resize(K);
    for (int k = 0; k < K; ++k) {
        const auto lo = optimize_q_over_interval(x, prices[k], intervals[k].lower,
                                                 intervals[k].upper, v_next, OptMode::minimum,
                                                 grid_points);
        const auto hi = optimize_q_over_interval(x, prices[k], intervals[k].lower,
                                                 intervals[k].upper, v_next, OptMode::maximum,
                                                 grid_points);
        step.worst_q[k] = lo.value;
        step.best_q[k] = hi.value;
        step.lambda_choice[k] = lo.lambda;
    }
    for (int k = 0; k < K; ++k) {
        double rival = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < K; ++j)
            if (j != k) rival = std::max(rival, step.best_q[j]);
        step.regret[k] = K == 1 ? 0.0 : std::max(0.0, rival - step.worst_q[k]);
    }
    step.action = argmin_tie_high(step.regret);
    return step;
}

BandStep band_pessimistic_backup(std::span<const double> prices,
                                 std::span<const std::optional<ident::Band>> bands,
                                 std::span<const double> v_next, int x, int grid_points) {
    const int K = static_cast<int>(prices.size());
    BandStep step;
    step.q.assign(K, kNaN);
    std::vector<int> adm;
    for (int k = 0; k < K; ++k) {
        if (!bands[k]) continue;
        adm.push_back(k);
        step.q[k] = optimize_q_over_interval(x, prices[k], bands[k]->lower, bands[k]->upper,
                                             v_next, OptMode::minimum, grid_points)
                        .value;
    }
    if (adm.empty()) throw UnlearnableError("no observed price at this period");
    step.action = argmax_tie_high(step.q, adm);
    return step;
}

BandStep greedy_backup(std::span<const double> prices,
                       std::span<const std::optional<double>> lambda_hat,
                       std::span<const double> v_next, int x) {
    const int K = static_cast<int>(prices.size());
    BandStep step;
    step.q.assign(K, kNaN);
    std::vector<int> adm;
    for (int k = 0; k < K; ++k) {
        if (!lambda_hat[k]) continue;
        adm.push_back(k);
        // An all-zero demand cell plugs in as a vanishing rate.
        const double lam = std::max(*lambda_hat[k], 1e-12);
        step.q[k] = bellman_q(x, prices[k], lam, v_next);
    }
    if (adm.empty()) throw UnlearnableError("no observed price at this period");
    step.action = argmax_tie_high(step.q, adm);
    return step;
}

namespace {

LearnerOutput make_output(Method method, int T, int L, int K) {
    LearnerOutput out;
    out.method = method;
    out.policy = PolicyTable(T, L, K);
    out.policy.deterministic = true;
    out.v = ValueTable(T, L);
    out.q = QTable(T, L, K, kNaN);
    // chosen-rate diagnostics exist only for the pooled-interval methods
    if (method == Method::refined_pess || method == Method::opportunistic)
        out.lambda_choice = QTable(T, L, K, kNaN);
    if (method == Method::opportunistic) out.regret_matrix = QTable(T, L, K, kNaN);
    out.observed.assign(T, {});
    return out;
}

// Worst-case / minimax-regret recursion over pooled intervals; the two
// methods share the per-(t,price) column extrema.
LearnerOutput interval_recursion(Method method, const ident::IntervalSet& intervals,
                                 int max_inventory, int grid_points) {
    const int T = intervals.horizon, L = max_inventory,
              K = intervals.num_prices();
    LearnerOutput out = make_output(method, T, L, K);
    const bool minimax = method == Method::opportunistic;

    for (int t = T - 1; t >= 0; --t) {
        const auto v_next = out.v.row(t + 1);
        std::vector<ColumnExtrema> ext(K);
        for (int k = 0; k < K; ++k)
            ext[k] = column_extrema(intervals.prices[k], intervals.at(t, k).lower,
                                    intervals.at(t, k).upper, v_next, L, grid_points);
        out.observed[t] = all_indices(K);
        std::vector<double> crit(K);
        for (int x = 0; x <= L; ++x) {
            for (int k = 0; k < K; ++k) {
                out.q.at(t, x, k) = ext[k].worst[x];
                out.lambda_choice.at(t, x, k) = ext[k].worst_lambda[x];
            }
            int action;
            if (minimax) {
                for (int k = 0; k < K; ++k) {
                    double rival = -std::numeric_limits<double>::infinity();
                    for (int j = 0; j < K; ++j)
                        if (j != k) rival = std::max(rival, ext[j].best[x]);
                    crit[k] = K == 1 ? 0.0 : std::max(0.0, rival - ext[k].worst[x]);
                    out.regret_matrix.at(t, x, k) = crit[k];
                }
                action = argmin_tie_high(crit);
            } else {
                for (int k = 0; k < K; ++k) crit[k] = ext[k].worst[x];
                const auto adm = all_indices(K);
                action = argmax_tie_high(crit, adm);
            }
            out.policy.set_one_hot(t, x, action);
            out.v.at(t, x) = ext[action].worst[x];
        }
    }
    return out;
}

// Observed-prices-only recursion: plug-in (greedy) or worst case over the
// own-price band (vanilla pessimistic).
LearnerOutput restricted_recursion(Method method, const sim::OfflineDataset& dataset,
                                   const LearnerConfig& config) {
    const int T = dataset.horizon, L = dataset.max_inventory, K = dataset.num_prices();
    const auto est = ident::estimate_lambdas(dataset, config.c);
    LearnerOutput out = make_output(method, T, L, K);

    for (int t = T - 1; t >= 0; --t) {
        out.observed[t] = est.observed(t);
        if (out.observed[t].empty())
            throw UnlearnableError("no observed price at period " + std::to_string(t + 1));
        const auto v_next = out.v.row(t + 1);

        std::vector<ColumnExtrema> ext(K);
        for (int k : out.observed[t]) {
            if (method == Method::vanilla_pess) {
                const auto band =
                    ident::clipped_bounds(est, t, k, config.lambda_min, config.lambda_max);
                ext[k] = column_extrema(dataset.prices[k], band.lower, band.upper, v_next, L,
                                        config.grid_points);
            } else {
                const double lam = std::max(est.lambda_hat[t][k], 1e-12);
                ext[k] = column_extrema(dataset.prices[k], lam, lam, v_next, L, 1);
            }
        }
        std::vector<double> crit(K, kNaN);
        for (int x = 0; x <= L; ++x) {
            for (int k : out.observed[t]) {
                crit[k] = ext[k].worst[x];
                out.q.at(t, x, k) = crit[k];
            }
            const int action = argmax_tie_high(crit, out.observed[t]);
            out.policy.set_one_hot(t, x, action);
            out.v.at(t, x) = crit[action];
        }
    }
    return out;
}

void check_config(const LearnerConfig& config) {
    if (config.grid_points < 2) throw std::invalid_argument("config: grid_points must be >= 2");
    if (!(config.lambda_min > 0.0) || !(config.lambda_max >= config.lambda_min))
        throw std::invalid_argument("config: need 0 < lambda_min <= lambda_max");
    if (!(config.c >= 0.0)) throw std::invalid_argument("config: c must be non-negative");
}

}  // namespace

LearnerOutput learn_greedy(const sim::OfflineDataset& dataset, const LearnerConfig& config) {
    return restricted_recursion(Method::greedy, dataset, config);
}

LearnerOutput learn_vanilla_pessimistic(const sim::OfflineDataset& dataset,
                                        const LearnerConfig& config) {
    check_config(config);
    return restricted_recursion(Method::vanilla_pess, dataset, config);
}

LearnerOutput learn_refined_pessimistic(const ident::IntervalSet& intervals, int max_inventory,
                                        int grid_points) {
    return interval_recursion(Method::refined_pess, intervals, max_inventory, grid_points);
}

LearnerOutput learn_opportunistic(const ident::IntervalSet& intervals, int max_inventory,
                                  int grid_points) {
    return interval_recursion(Method::opportunistic, intervals, max_inventory, grid_points);
}

LearnerOutput learn_refined_pessimistic(const sim::OfflineDataset& dataset,
                                        const LearnerConfig& config) {
    check_config(config);
    const auto est = ident::estimate_lambdas(dataset, config.c);
    const auto intervals = ident::refined_intervals(est, config.lambda_min, config.lambda_max);
    return learn_refined_pessimistic(intervals, dataset.max_inventory, config.grid_points);
}

LearnerOutput learn_opportunistic(const sim::OfflineDataset& dataset,
                                  const LearnerConfig& config) {
    check_config(config);
    const auto est = ident::estimate_lambdas(dataset, config.c);
    const auto intervals = ident::refined_intervals(est, config.lambda_min, config.lambda_max);
    return learn_opportunistic(intervals, dataset.max_inventory, config.grid_points);
}

}  // namespace pricing::learn
