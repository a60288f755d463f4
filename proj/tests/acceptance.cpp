// Acceptance suite: twelve numbered criteria, one pass/fail line each.
// Usage: acceptance [criterion ...]   (no arguments = run all twelve)

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pricing/analysis.hpp"
#include "pricing/experiments.hpp"
#include "pricing/intervals.hpp"
#include "pricing/learners.hpp"
#include "pricing/mdp.hpp"
#include "pricing/simulate.hpp"

using namespace pricing;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

// Deterministic uniform stream for fixture generation.
class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}
    double uniform() { return rng_.uniform(0, 0, 0, n_++); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

private:
    sim::SeededRng rng_;
    std::uint64_t n_ = 0;
};

std::string fmt(double v, int prec = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. Exact optimal pricing table, all 60 cells, under one second.
// ---------------------------------------------------------------------------
Outcome criterion1() {
    constexpr std::array<std::array<int, 4>, 15> expected = {{
        {10, 10, 10, 10}, {10, 10, 10, 9}, {10, 10, 10, 9}, {10, 10, 10, 8},
        {10, 10, 10, 8},  {10, 10, 9, 8},  {10, 10, 9, 8},  {10, 10, 9, 8},
        {10, 9, 9, 8},    {10, 9, 8, 8},   {10, 9, 8, 8},   {10, 9, 8, 8},
        {9, 9, 8, 8},     {9, 8, 8, 8},    {9, 8, 8, 8},
    }};
    const auto model = default_model();
    const auto start = std::chrono::steady_clock::now();
    const auto sol = solve_optimal(model);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    int mismatches = 0;
    for (int x = 1; x <= 15; ++x)
        for (int t = 0; t < 4; ++t)
            mismatches +=
                model.prices[sol.policy.one_hot_action(t, x)] != expected[x - 1][t];
    Outcome out;
    out.pass = mismatches == 0 && ms < 1000.0;
    out.detail = "60-cell action table, " + std::to_string(mismatches) + " mismatches, solve " +
                 fmt(ms, 3) + " ms";
    return out;
}

// ---------------------------------------------------------------------------
// 2. Regret decomposition identity on 50 randomized tuples, residual <= 1e-8.
// ---------------------------------------------------------------------------
Outcome criterion2() {
    Draw draw(20101);
    double worst = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const int T = draw.uniform_int(1, 4), L = draw.uniform_int(2, 8),
                  K = draw.uniform_int(2, 4);
        PricingModel m;
        m.horizon = T;
        m.max_inventory = L;
        double p = draw.uniform(1.0, 4.0);
        for (int k = 0; k < K; ++k) {
            m.prices.push_back(p);
            p += draw.uniform(0.5, 3.0);
        }
        m.lambda_min = 0.3;
        m.lambda_max = 9.0;
        m.lambda.resize(T);
        for (int t = 0; t < T; ++t) {
            double hi = draw.uniform(3.0, 8.0);
            for (int k = 0; k < K; ++k) {
                m.lambda[t].push_back(hi);
                hi = std::max(m.lambda_min, hi - draw.uniform(0.0, 2.0));
            }
        }
        m.validate();

        PolicyTable pi_hat(T, L, K);
        for (int t = 0; t < T; ++t)
            for (int x = 0; x <= L; ++x) {
                std::vector<double> w(K);
                double sum = 0.0;
                for (auto& v : w) {
                    v = 0.05 + draw.uniform();
                    sum += v;
                }
                for (int k = 0; k < K; ++k) pi_hat.set_prob(t, x, k, w[k] / sum);
            }
        QTable q(T, L, K);
        for (int t = 0; t < T; ++t)
            for (int x = 1; x <= L; ++x)
                for (int k = 0; k < K; ++k) q.at(t, x, k) = draw.uniform(-5.0, 40.0);
        ValueTable v(T, L);
        for (int t = 0; t < T; ++t)
            for (int x = 0; x <= L; ++x) {
                double acc = 0.0;
                for (int k = 0; k < K; ++k) acc += q.at(t, x, k) * pi_hat.prob(t, x, k);
                v.at(t, x) = acc;
            }

        const auto pi_ref = solve_optimal(m).policy;
        const auto rep_out = analysis::decomposition_check(m, q, v, pi_hat, pi_ref,
                                                           point_mass(L, L));
        worst = std::max(worst, rep_out.residual);
    }
    return {worst <= 1e-8, "50 tuples, max |mu - (J1 - J2 + J3)| = " + fmt(worst, 3)};
}

// ---------------------------------------------------------------------------
// 3. One period, all prices observed: band and pooled pessimism produce
//    identical policies and identical value tables on 100 random instances.
// ---------------------------------------------------------------------------
Outcome criterion3() {
    Draw draw(30303);
    int policy_mismatch = 0, value_mismatch = 0, instances = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const int K = draw.uniform_int(2, 4);
        const int L = draw.uniform_int(1, 20);
        std::vector<double> prices;
        double p = draw.uniform(2.0, 5.0);
        for (int k = 0; k < K; ++k) {
            prices.push_back(p);
            p += draw.uniform(0.5, 3.0);
        }
        // Integer-demand cells with chosen counts give exact rational
        // estimates; resample until every pair of bands is order-consistent
        // (no crossing, hence no clamping anywhere).
        std::vector<std::vector<std::pair<int, int>>> steps;
        const double lmin = 0.4, lmax = 25.0;
        bool consistent = false;
        for (int attempt = 0; attempt < 200 && !consistent; ++attempt) {
            steps.clear();
            std::vector<double> lo(K), up(K);
            for (int k = 0; k < K; ++k) {
                const int n = draw.uniform_int(1, 12);
                const int total = draw.uniform_int(0, 8 * n);
                for (int i = 0; i < n; ++i) {
                    const int base = total / n;
                    const int extra = i < total % n ? 1 : 0;
                    steps.push_back({{k, base + extra}});
                }
                const double lh = static_cast<double>(total) / n;
                const double d = ident::delta(n, 1.0);
                lo[k] = std::clamp(lh - d, lmin, lmax);
                up[k] = std::clamp(lh + d, lmin, lmax);
            }
            consistent = true;
            for (int a = 0; a < K && consistent; ++a)
                for (int b = 0; b < a && consistent; ++b)
                    if (lo[a] > up[b]) consistent = false;  // higher price floor crosses
        }
        if (!consistent) continue;
        ++instances;

        sim::OfflineDataset ds;
        ds.horizon = 1;
        ds.max_inventory = L;
        ds.prices = prices;
        for (const auto& s : steps) {
            sim::Trajectory tr;
            tr.steps.push_back({L, s[0].first, s[0].second});
            ds.trajectories.push_back(tr);
        }

        learn::LearnerConfig cfg{1.0, 1001, lmin, lmax};
        const auto vp = learn::learn_vanilla_pessimistic(ds, cfg);
        const auto rp = learn::learn_refined_pessimistic(ds, cfg);
        for (int x = 0; x <= L; ++x) {
            policy_mismatch += vp.policy.one_hot_action(0, x) != rp.policy.one_hot_action(0, x);
            value_mismatch += vp.v.at(0, x) != rp.v.at(0, x);
        }
    }
    return {policy_mismatch == 0 && value_mismatch == 0 && instances == 100,
            std::to_string(instances) + " instances: " + std::to_string(policy_mismatch) +
                " policy / " + std::to_string(value_mismatch) +
                " value mismatches (exact equality)"};
}

// ---------------------------------------------------------------------------
// 4. A price whose pooled floor is borrowed from an observed higher price is
//    never selected by the pooled worst-case learner.
// ---------------------------------------------------------------------------
Outcome criterion4() {
    Draw draw(40404);
    const sim::SeededRng rng(40405);
    int datasets = 0, selected_cells = 0, checked_cells = 0;
    while (datasets < 100) {
        const int K = draw.uniform_int(3, 4);
        std::vector<double> prices;
        double p = draw.uniform(2.0, 5.0);
        for (int k = 0; k < K; ++k) {
            prices.push_back(p);
            p += draw.uniform(0.5, 2.5);
        }
        const int T = draw.uniform_int(1, 4), L = draw.uniform_int(4, 15);
        PricingModel m;
        m.horizon = T;
        m.max_inventory = L;
        m.prices = prices;
        m.lambda_min = 0.5;
        m.lambda_max = 15.0;
        m.lambda.resize(T);
        for (int t = 0; t < T; ++t) {
            double hi = draw.uniform(3.0, 8.0);
            for (int k = 0; k < K; ++k) {
                m.lambda[t].push_back(hi);
                hi = std::max(m.lambda_min, hi - draw.uniform(0.0, 2.0));
            }
        }
        m.validate();

        const int excluded = draw.uniform_int(0, K - 2);  // never the top price
        PolicyTable behavior(T, L, K);
        for (int t = 0; t < T; ++t)
            for (int x = 0; x <= L; ++x)
                for (int k = 0; k < K; ++k)
                    behavior.set_prob(t, x, k, k == excluded ? 0.0 : 1.0 / (K - 1));

        const auto ds = sim::generate_dataset(m, behavior, draw.uniform_int(10, 40), rng,
                                              static_cast<std::uint64_t>(datasets));
        learn::LearnerConfig cfg{1.0, 501, m.lambda_min,
                                 std::max(m.lambda_min, 1.5 * ds.max_demand())};
        const auto est = ident::estimate_lambdas(ds, cfg.c);
        const auto intervals = ident::refined_intervals(est, cfg.lambda_min, cfg.lambda_max);
        bool sourced_everywhere = true;
        for (int t = 0; t < T; ++t) {
            const auto& cell = intervals.at(t, excluded);
            if (!cell.lower_source || *cell.lower_source <= excluded) sourced_everywhere = false;
        }
        if (!sourced_everywhere) continue;  // needs an observed higher price as the floor source

        ++datasets;
        const auto out = learn::learn_refined_pessimistic(intervals, L, 501);
        for (int t = 0; t < T; ++t)
            for (int x = 0; x <= L; ++x) {
                ++checked_cells;
                selected_cells += out.policy.one_hot_action(t, x) == excluded;
            }
    }
    return {selected_cells == 0, "100 datasets, excluded price chosen at " +
                                     std::to_string(selected_cells) + " of " +
                                     std::to_string(checked_cells) + " cells"};
}

// ---------------------------------------------------------------------------
// 5. Dynamic two-price fixture (one unit of stock, continuation 20, ceilings
//    2.0 / 1.5): pooled pessimism picks 10, band pessimism picks 9.
// ---------------------------------------------------------------------------
Outcome criterion5() {
    const std::vector<double> prices = {9.0, 10.0};
    std::vector<double> v_next = {0.0, 20.0};

    std::vector<std::optional<ident::Band>> bands(2);
    bands[0] = ident::Band{1.0, 1.5};
    bands[1] = ident::Band{1.0, 2.0};
    const auto vanilla = learn::band_pessimistic_backup(prices, bands, v_next, 1, 1001);

    std::vector<ident::PriceInterval> cells(2);
    cells[0] = {1.0, 1.5, 0, 0, false};
    cells[1] = {1.0, 1.5, 1, 0, false};  // ceiling borrowed from the lower price
    const auto refined = learn::pessimistic_backup(prices, cells, v_next, 1, 1001);

    const bool pass = prices[refined.action] == 10.0 && prices[vanilla.action] == 9.0;
    return {pass, "refined picks " + fmt(prices[refined.action], 3) + " (q " +
                      fmt(refined.q[1], 6) + " vs " + fmt(refined.q[0], 6) +
                      "), vanilla picks " + fmt(prices[vanilla.action], 3) + " (q " +
                      fmt(vanilla.q[1], 6) + " vs " + fmt(vanilla.q[0], 6) + ")"};
}

// ---------------------------------------------------------------------------
// 6. Static two-price fixture (intervals [4,10] for price 8, [4,6] for price
//    10): minimax regret picks 8, worst-case revenue picks 10.
// ---------------------------------------------------------------------------
Outcome criterion6() {
    const std::vector<double> prices = {8.0, 10.0};
    const int L = 60;
    std::vector<double> zero(L + 1, 0.0);
    std::vector<ident::PriceInterval> cells(2);
    cells[0] = {4.0, 10.0, 1, std::nullopt, false};
    cells[1] = {4.0, 6.0, 1, 1, false};
    const auto opp = learn::opportunistic_backup(prices, cells, zero, L, 1001);
    const auto pess = learn::pessimistic_backup(prices, cells, zero, L, 1001);
    const bool pass = prices[opp.action] == 8.0 && prices[pess.action] == 10.0;
    return {pass, "opportunistic picks " + fmt(prices[opp.action], 3) + " (regrets " +
                      fmt(opp.regret[0], 4) + " / " + fmt(opp.regret[1], 4) +
                      "), pessimistic picks " + fmt(prices[pess.action], 3)};
}

// ---------------------------------------------------------------------------
// 7. Worst-case Q-table validity frequency at c=1, N=20, scenario 2 over 100
//    replications: fraction of replications with zero Q > Q* cells >= 0.9.
// ---------------------------------------------------------------------------
Outcome criterion7() {
    const auto model = default_model();
    const auto behavior = sim::scenario_behavior(model, 2);
    const sim::SeededRng rng(70707);
    int clean = 0;
    const int reps = 100;
    for (int r = 0; r < reps; ++r) {
        const auto ds = sim::generate_dataset(model, behavior, 20, rng, r);
        learn::LearnerConfig cfg{1.0, 1001, model.lambda_min,
                                 std::max(model.lambda_min, 1.5 * ds.max_demand())};
        const auto out = learn::learn_refined_pessimistic(ds, cfg);
        clean += analysis::pessimism_validity(model, out).violations == 0;
    }
    const double frac = static_cast<double>(clean) / reps;
    return {frac >= 0.9, "zero-violation fraction " + fmt(frac, 3) + " (target >= 0.9)"};
}

// ---------------------------------------------------------------------------
// 8. Exact value ordering of the perturbed optimal policies.
// ---------------------------------------------------------------------------
Outcome criterion8() {
    const auto model = default_model();
    const auto init = point_mass(15, 15);
    const double v_opt =
        evaluate_policy_exact(model, solve_optimal(model).policy, init).initial_value;
    const double v1 =
        evaluate_policy_exact(model, sim::make_suboptimal_policy(model, 2), init).initial_value;
    const double v2 =
        evaluate_policy_exact(model, sim::make_suboptimal_policy(model, 1), init).initial_value;
    const double v3 =
        evaluate_policy_exact(model, sim::make_suboptimal_policy(model, 0), init).initial_value;
    const bool pass = v_opt > v1 && v1 > std::max(v2, v3);
    return {pass, "optimal " + fmt(v_opt, 6) + " > I " + fmt(v1, 6) + " > max(II " + fmt(v2, 6) +
                      ", III " + fmt(v3, 6) + ")"};
}

// ---------------------------------------------------------------------------
// 9. Replication study, R=100, N=20: minimax regret at least matches band
//    pessimism (within one paired standard error) in scenarios 2, 3, 5; every
//    method within 5% of the optimum in scenario 4; full suite under 5 min.
// ---------------------------------------------------------------------------
Outcome criterion9() {
    const auto start = std::chrono::steady_clock::now();
    exp::ExperimentConfig cfg;
    cfg.n = 20;
    cfg.replications = 100;
    cfg.seed = 909090;

    bool pass = true;
    std::ostringstream detail;
    for (int scen : {1, 2, 3, 4, 5}) {
        cfg.scenario = scen;
        const auto result = exp::run_experiment(cfg);
        double mean_vp = 0, mean_opp = 0, mean_diff = 0, ss_diff = 0;
        std::vector<double> diffs;
        std::map<std::string, double> means;
        for (const auto& s : result.summary) means[s.method] = s.mean;
        for (int r = 0; r < cfg.replications; ++r) {
            double vp = 0, opp = 0;
            for (const auto& row : result.rows)
                if (row.replication == r) {
                    if (row.method == "vanilla_pess") vp = row.value;
                    if (row.method == "opportunistic") opp = row.value;
                }
            diffs.push_back(opp - vp);
        }
        for (double d : diffs) mean_diff += d;
        mean_diff /= diffs.size();
        for (double d : diffs) ss_diff += (d - mean_diff) * (d - mean_diff);
        const double se = std::sqrt(ss_diff / (diffs.size() - 1) / diffs.size());
        mean_vp = means["vanilla_pess"];
        mean_opp = means["opportunistic"];

        if (scen == 2 || scen == 3 || scen == 5) {
            const bool ok = mean_diff >= -se;
            pass = pass && ok;
            detail << "s" << scen << ": opp-vp " << fmt(mean_diff, 3) << " (se " << fmt(se, 2)
                   << (ok ? ") " : ") FAIL ");
        } else if (scen == 4) {
            bool ok = true;
            for (const auto& [name, mean] : means)
                ok = ok && mean >= 0.95 * result.optimal_value;
            pass = pass && ok;
            detail << "s4 within 5%: " << (ok ? "yes " : "NO ");
        } else {
            detail << "s1: opp " << fmt(mean_opp, 5) << " vp " << fmt(mean_vp, 5) << " ";
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    pass = pass && secs < 300.0;
    detail << "runtime " << fmt(secs, 3) << " s";
    return {pass, detail.str()};
}

// ---------------------------------------------------------------------------
// 10. Mean exact regret over dataset sizes 20..1280 (R=200, scenario 4):
//     strictly decreasing, fitted log-log slope in [-0.75, -0.3].
// ---------------------------------------------------------------------------
Outcome criterion10() {
    exp::ExperimentConfig cfg;
    cfg.scenario = 4;
    cfg.replications = 200;
    cfg.seed = 101010;
    const std::vector<int> ns = {20, 80, 320, 1280};
    const auto sweep = exp::run_regret_sweep(cfg, ns);

    std::vector<double> means;
    for (int n : ns)
        for (const auto& p : sweep.points)
            if (p.n == n && p.method == "refined_pess") means.push_back(p.mean_regret);
    bool decreasing = means.size() == ns.size();
    for (std::size_t i = 0; decreasing && i + 1 < means.size(); ++i)
        decreasing = means[i] > means[i + 1];
    const double slope = sweep.slopes.count("refined_pess") ? sweep.slopes.at("refined_pess")
                                                            : std::nan("");
    const bool slope_ok = slope >= -0.75 && slope <= -0.3;

    std::ostringstream detail;
    detail << "mean regrets";
    for (double m : means) detail << ' ' << fmt(m, 3);
    detail << "; slope " << fmt(slope, 3) << " (window [-0.75, -0.3])"
           << (decreasing ? "" : "; not strictly decreasing");
    return {decreasing && slope_ok, detail.str()};
}

// ---------------------------------------------------------------------------
// 11. Interval properties over 500 random datasets at c=1, N=20: bounds
//     non-increasing in price; pooled never looser than neighbor-based where
//     the latter is valid; joint truth coverage >= 0.9.
// ---------------------------------------------------------------------------
Outcome criterion11() {
    Draw draw(111111);
    const sim::SeededRng rng(111112);
    int monotone_bad = 0, containment_bad = 0, covered = 0;
    const int reps = 500;
    for (int rep = 0; rep < reps; ++rep) {
        PricingModel m;
        m.horizon = draw.uniform_int(1, 4);
        m.max_inventory = 15;
        double p = draw.uniform(2.0, 5.0);
        for (int k = 0; k < 3; ++k) {
            m.prices.push_back(p);
            p += draw.uniform(0.5, 2.5);
        }
        m.lambda_min = 0.5;
        m.lambda_max = 16.0;
        m.lambda.resize(m.horizon);
        for (int t = 0; t < m.horizon; ++t) {
            double hi = draw.uniform(3.0, 8.0);
            for (int k = 0; k < 3; ++k) {
                m.lambda[t].push_back(hi);
                hi = std::max(m.lambda_min, hi - draw.uniform(0.0, 2.0));
            }
        }
        m.validate();

        PolicyTable behavior(m.horizon, m.max_inventory, 3);
        const int skipped = draw.uniform_int(0, 3);  // 3 = observe everything
        for (int t = 0; t < m.horizon; ++t)
            for (int x = 0; x <= m.max_inventory; ++x)
                for (int k = 0; k < 3; ++k)
                    behavior.set_prob(
                        t, x, k, k == skipped ? 0.0 : (skipped < 3 ? 0.5 : 1.0 / 3.0));

        const auto ds = sim::generate_dataset(m, behavior, 20, rng, rep);
        const auto est = ident::estimate_lambdas(ds, 1.0);
        const double lmax = std::max(m.lambda_min, 1.5 * ds.max_demand());
        const auto set = ident::refined_intervals(est, m.lambda_min, lmax);

        bool covers = true;
        for (int t = 0; t < m.horizon; ++t) {
            for (int k = 0; k < 3; ++k) {
                const auto& c = set.at(t, k);
                if (k > 0 && (c.upper > set.at(t, k - 1).upper + 1e-12 ||
                              c.lower > set.at(t, k - 1).lower + 1e-12))
                    ++monotone_bad;
                if (!est.is_observed(t, k)) {
                    const auto crude = ident::crude_interval(est, t, k, m.lambda_min, lmax);
                    if (crude.valid() &&
                        (c.lower < crude.lower - 1e-12 || c.upper > crude.upper + 1e-12))
                        ++containment_bad;
                }
                const double truth = m.rate(t, k);
                if (truth < c.lower - 1e-12 || truth > c.upper + 1e-12) covers = false;
            }
        }
        covered += covers;
    }
    const double coverage = static_cast<double>(covered) / reps;
    const bool pass = monotone_bad == 0 && containment_bad == 0 && coverage >= 0.9;
    return {pass, "monotone violations " + std::to_string(monotone_bad) + ", containment " +
                      std::to_string(containment_bad) + ", joint coverage " + fmt(coverage, 3) +
                      " (target >= 0.9)"};
}

// ---------------------------------------------------------------------------
// 12. Static minimax selection equals direct regret enumeration on 200 random
//     bound configurations; condition-satisfying fixtures select the
//     predicted price.
// ---------------------------------------------------------------------------
Outcome criterion12() {
    Draw draw(121212);
    const int L = 150;
    std::vector<double> zero(L + 1, 0.0);
    int enum_mismatch = 0;
    int cond_fail = 0, cond_total = 0;

    // Pooled intervals for three monotone, order-consistent bands where
    // `missing` is unobserved; the fixture keeps pooling inactive elsewhere.
    auto build_cells = [&](const std::array<double, 3>& lo, const std::array<double, 3>& up,
                           int missing, double lmin,
                           double lmax) -> std::vector<ident::PriceInterval> {
        std::vector<ident::PriceInterval> cells(3);
        for (int k = 0; k < 3; ++k) {
            if (k == missing) continue;
            cells[k] = {lo[k], up[k], k, k, false};
        }
        // borrow: floor from the nearest observed above, ceiling from below
        double floor_v = lmin, ceil_v = lmax;
        std::optional<int> floor_src, ceil_src;
        for (int j = missing + 1; j < 3; ++j)
            if (j != missing) {
                floor_v = lo[j];
                floor_src = j;
                break;
            }
        for (int j = missing - 1; j >= 0; --j)
            if (j != missing) {
                ceil_v = up[j];
                ceil_src = j;
                break;
            }
        cells[missing] = {floor_v, ceil_v, floor_src, ceil_src, false};
        return cells;
    };

    auto enumerate_choice = [&](const std::vector<ident::PriceInterval>& cells,
                                const std::vector<double>& prices) {
        int best_k = 0;
        double best_mu = 1e300;
        for (int k = 0; k < 3; ++k) {
            double rival = 0.0;
            for (int j = 0; j < 3; ++j)
                if (j != k) rival = std::max(rival, prices[j] * cells[j].upper);
            const double mu = std::max(0.0, rival - prices[k] * cells[k].lower);
            if (mu <= best_mu) {
                best_mu = mu;
                best_k = k;
            }
        }
        return best_k;
    };

    const double lmin = 0.4;
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> prices;  // ascending
        double p = draw.uniform(2.0, 5.0);
        for (int k = 0; k < 3; ++k) {
            prices.push_back(p);
            p += draw.uniform(0.5, 3.0);
        }
        // Monotone bands: rates fall as the price rises.
        std::array<double, 3> lo{}, up{};
        double base = draw.uniform(4.0, 9.0);
        for (int k = 2; k >= 0; --k) {  // build from the top price down
            const double width = draw.uniform(0.2, 1.5);
            lo[k] = std::max(lmin, base);
            up[k] = lo[k] + width;
            base = up[k] + draw.uniform(0.0, 1.0);
        }
        const double lmax = up[0] + draw.uniform(0.5, 4.0);
        const int missing = draw.uniform_int(0, 2);
        const auto cells = build_cells(lo, up, missing, lmin, lmax);

        const auto step = learn::opportunistic_backup(prices, cells, zero, L, 2001);
        if (step.action != enumerate_choice(cells, prices)) ++enum_mismatch;
    }

    // Condition-satisfying fixtures: generate until each sufficient condition
    // holds with a clear regret margin, then demand the predicted selection.
    for (int which = 0; which < 3; ++which) {
        int done = 0, guard = 0;
        while (done < 25 && guard < 20000) {
            ++guard;
            std::vector<double> prices;
            double p = draw.uniform(2.0, 6.0);
            for (int k = 0; k < 3; ++k) {
                prices.push_back(p);
                p += draw.uniform(0.5, 3.0);
            }
            std::array<double, 3> lo{}, up{};
            double base = draw.uniform(1.0, 8.0);
            for (int k = 2; k >= 0; --k) {
                const double width = draw.uniform(0.2, 2.0);
                lo[k] = base;
                up[k] = lo[k] + width;
                base = up[k] + draw.uniform(0.0, 1.5);
            }
            const double cond_lmin = std::max(0.05, lo[2] - draw.uniform(0.0, 3.0));
            const double cond_lmax = up[0] + draw.uniform(0.5, 5.0);
            const int missing = 2 - which;  // m1 drops the top price

            analysis::StaticBounds b;
            b.price = {prices[2], prices[1], prices[0]};
            b.lower = {lo[2], lo[1], lo[0]};
            b.upper = {up[2], up[1], up[0]};
            const auto cond = static_cast<analysis::StaticCondition>(which);
            if (!analysis::static_condition_check(b, cond, cond_lmin, cond_lmax)) continue;

            const auto cells = build_cells(lo, up, missing, cond_lmin, cond_lmax);
            // demand a margin so grid slack cannot flip a knife-edge tie
            std::array<double, 3> mu{};
            for (int k = 0; k < 3; ++k) {
                double rival = 0.0;
                for (int j = 0; j < 3; ++j)
                    if (j != k) rival = std::max(rival, prices[j] * cells[j].upper);
                mu[k] = std::max(0.0, rival - prices[k] * cells[k].lower);
            }
            const int predicted = missing;
            bool margin = true;
            for (int k = 0; k < 3; ++k)
                if (k != predicted && mu[k] < mu[predicted] + 1e-6) margin = false;
            if (!margin) continue;

            ++done;
            ++cond_total;
            const auto step = learn::opportunistic_backup(prices, cells, zero, L, 2001);
            if (step.action != predicted) ++cond_fail;
        }
        if (done < 25) return {false, "fixture generation starved for condition " +
                                          std::to_string(which + 1)};
    }

    const bool pass = enum_mismatch == 0 && cond_fail == 0;
    return {pass, "200 enumeration checks, " + std::to_string(enum_mismatch) +
                      " mismatches; " + std::to_string(cond_total) +
                      " condition fixtures, " + std::to_string(cond_fail) + " wrong selections"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<int, std::function<Outcome()>>> all = {
        {1, criterion1}, {2, criterion2},   {3, criterion3},   {4, criterion4},
        {5, criterion5}, {6, criterion6},   {7, criterion7},   {8, criterion8},
        {9, criterion9}, {10, criterion10}, {11, criterion11}, {12, criterion12},
    };
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

    bool all_pass = true;
    for (const auto& [id, fn] : all) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), id) == wanted.end())
            continue;
        const Outcome out = fn();
        all_pass = all_pass && out.pass;
        std::printf("criterion %02d %s  %s\n", id, out.pass ? "PASS" : "FAIL",
                    out.detail.c_str());
        std::fflush(stdout);
    }
    return all_pass ? 0 : 1;
}
