#include "pricing/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace pricing::exp {

namespace {

double quantile(std::vector<double> sorted, double p) {
    if (sorted.empty()) return 0.0;
    const double h = (sorted.size() - 1) * p;
    const std::size_t i = static_cast<std::size_t>(h);
    if (i + 1 >= sorted.size()) return sorted.back();
    return sorted[i] + (h - i) * (sorted[i + 1] - sorted[i]);
}

std::vector<learn::Method> method_list(const ExperimentConfig& config) {
    std::vector<learn::Method> ms = {learn::Method::vanilla_pess, learn::Method::refined_pess,
                                     learn::Method::opportunistic};
    if (config.include_greedy) ms.insert(ms.begin(), learn::Method::greedy);
    return ms;
}

learn::LearnerOutput run_method(learn::Method m, const sim::OfflineDataset& ds,
                                const learn::LearnerConfig& cfg) {
    switch (m) {
        case learn::Method::greedy: return learn::learn_greedy(ds, cfg);
        case learn::Method::vanilla_pess: return learn::learn_vanilla_pessimistic(ds, cfg);
        case learn::Method::refined_pess: return learn::learn_refined_pessimistic(ds, cfg);
        case learn::Method::opportunistic: return learn::learn_opportunistic(ds, cfg);
    }
    throw std::logic_error("unknown method");
}

}  // namespace

std::string eval_mode_name(EvalMode m) { return m == EvalMode::exact ? "exact" : "mc"; }

void ExperimentConfig::validate() const {
    model.validate();
    if (scenario < 1 || scenario > 5)
        throw std::invalid_argument("config: scenario must be in 1..5");
    if (n < 1) throw std::invalid_argument("config: n must be >= 1");
    if (replications < 1) throw std::invalid_argument("config: replications must be >= 1");
    if (grid_points < 2) throw std::invalid_argument("config: grid must be >= 2");
    if (mc_rollouts < 1) throw std::invalid_argument("config: mc-rollouts must be >= 1");
    if (!(c >= 0.0)) throw std::invalid_argument("config: c must be non-negative");
    if (threads < 0) throw std::invalid_argument("config: threads must be >= 0");
    if (lambda_max_override && !(*lambda_max_override >= model.lambda_min))
        throw std::invalid_argument("config: lambda_max override below lambda_min");
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    const auto& model = config.model;
    const auto behavior = sim::scenario_behavior(model, config.scenario);
    const auto init = point_mass(model.max_inventory, model.max_inventory);
    const auto methods = method_list(config);

    ExperimentResult result;
    result.eval = config.eval;
    result.optimal_value =
        evaluate_policy_exact(model, solve_optimal(model).policy, init).initial_value;

    const int R = config.replications;
    result.rows.assign(static_cast<std::size_t>(R) * methods.size(), {});

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        const sim::SeededRng rng(config.seed);
        for (;;) {
            const int r = next.fetch_add(1);
            if (r >= R) return;
            try {
                auto ds = sim::generate_dataset(model, behavior, config.n, rng, r);
                ds.scenario = config.scenario;
                learn::LearnerConfig lcfg;
                lcfg.c = config.c;
                lcfg.grid_points = config.grid_points;
                lcfg.lambda_min = model.lambda_min;
                lcfg.lambda_max = config.lambda_max_override
                                      ? *config.lambda_max_override
                                      : std::max(model.lambda_min, 1.5 * ds.max_demand());

                for (std::size_t mi = 0; mi < methods.size(); ++mi) {
                    ResultRow row;
                    row.scenario = config.scenario;
                    row.method = learn::method_name(methods[mi]);
                    row.replication = r;
                    const auto start = std::chrono::steady_clock::now();
                    try {
                        const auto out = run_method(methods[mi], ds, lcfg);
                        if (config.eval == EvalMode::exact) {
                            row.value =
                                evaluate_policy_exact(model, out.policy, init).initial_value;
                        } else {
                            const sim::SeededRng eval_rng(config.seed ^
                                                          (0x9e3779b97f4a7c15ULL * (r + 1)));
                            row.value = evaluate_policy_mc(model, out.policy,
                                                           config.mc_rollouts, eval_rng, init)
                                            .mean;
                        }
                        row.regret = result.optimal_value - row.value;
                    } catch (const learn::UnlearnableError& e) {
                        if (config.strict) throw;
                        row.failed = true;
                        row.error = e.what();
                    }
                    row.runtime_ms = std::chrono::duration<double, std::milli>(
                                         std::chrono::steady_clock::now() - start)
                                         .count();
                    result.rows[static_cast<std::size_t>(r) * methods.size() + mi] =
                        std::move(row);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    int n_threads = config.threads > 0
                        ? config.threads
                        : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::clamp(n_threads, 1, R);
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    result.summary = summarize(result.rows);
    return result;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
    std::vector<SummaryRow> out;
    std::vector<std::string> order;
    for (const auto& row : rows)
        if (std::find(order.begin(), order.end(), row.method) == order.end())
            order.push_back(row.method);
    for (const auto& method : order) {
        std::vector<double> values;
        int scen = 0;
        for (const auto& row : rows)
            if (row.method == method && !row.failed) {
                values.push_back(row.value);
                scen = row.scenario;
            }
        SummaryRow s;
        s.scenario = scen;
        s.method = method;
        s.count = static_cast<int>(values.size());
        if (values.empty()) {
            out.push_back(s);
            continue;
        }
        std::sort(values.begin(), values.end());
        double sum = 0.0;
        for (double v : values) sum += v;
        s.mean = sum / values.size();
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.sd = values.size() > 1 ? std::sqrt(ss / (values.size() - 1)) : 0.0;
        s.min = values.front();
        s.q25 = quantile(values, 0.25);
        s.median = quantile(values, 0.5);
        s.q75 = quantile(values, 0.75);
        s.max = values.back();
        out.push_back(s);
    }
    return out;
}

Table1Result run_table1(const ExperimentConfig& config) {
    config.model.validate();
    Table1Result out{solve_optimal(config.model), {}};
    const auto& model = config.model;

    std::ostringstream os;
    os << "  x";
    for (int t = 1; t <= model.horizon; ++t) os << "   t=" << t;
    os << '\n';
    for (int x = 1; x <= model.max_inventory; ++x) {
        os << (x < 10 ? "  " : " ") << x;
        for (int t = 0; t < model.horizon; ++t) {
            const double price = model.prices[out.solution.policy.one_hot_action(t, x)];
            os << "    " << price;
        }
        os << '\n';
    }
    out.rendered = os.str();
    return out;
}

SweepResult run_regret_sweep(const ExperimentConfig& config, const std::vector<int>& n_values) {
    if (n_values.empty()) throw std::invalid_argument("sweep: empty n list");
    SweepResult sweep;
    std::map<std::string, std::vector<std::pair<double, double>>> log_points;

    for (int n : n_values) {
        ExperimentConfig cfg = config;
        cfg.n = n;
        const auto result = run_experiment(cfg);
        for (const auto& s : summarize(result.rows)) {
            double mean_regret = 0.0;
            int count = 0;
            for (const auto& row : result.rows)
                if (row.method == s.method && !row.failed) {
                    mean_regret += row.regret;
                    ++count;
                }
            if (count > 0) mean_regret /= count;
            sweep.points.push_back({n, s.method, mean_regret});
            if (mean_regret > 0.0)
                log_points[s.method].push_back({std::log(n), std::log(mean_regret)});
        }
    }
    for (const auto& [method, pts] : log_points) {
        if (pts.size() < 2) continue;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& [x, y] : pts) {
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double n = static_cast<double>(pts.size());
        sweep.slopes[method] = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return sweep;
}

}  // namespace pricing::exp
