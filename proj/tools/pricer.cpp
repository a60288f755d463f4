// Command-line harness: exact solving, dataset simulation, offline policy
// learning, evaluation, and the replication experiments.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pricing/analysis.hpp"
#include "pricing/experiments.hpp"
#include "pricing/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using pricing::exp::EvalMode;
using pricing::exp::ExperimentConfig;

namespace {

struct CliOptions {
    ExperimentConfig cfg;
    std::string config_path;
    std::string model_path;
    std::string eval_name = "exact";
    double lambda_max_flag = -1.0;  // <0: per-dataset rule
    std::vector<int> scenarios;
    std::vector<int> n_list;
    std::string method = "all";
    std::string data_path, manifest_path, policy_path;
};

void add_common_flags(CLI::App* sub, CliOptions& opt) {
    sub->add_option("--scenario", opt.cfg.scenario, "Behavior scenario 1..5");
    sub->add_option("--n", opt.cfg.n, "Trajectories per dataset");
    sub->add_option("--reps", opt.cfg.replications, "Replication count");
    sub->add_option("--c", opt.cfg.c, "Uncertainty constant");
    sub->add_option("--grid", opt.cfg.grid_points, "Rate-grid points per interval");
    sub->add_option("--seed", opt.cfg.seed, "Base seed");
    sub->add_option("--eval", opt.eval_name, "Evaluation mode: exact|mc");
    sub->add_option("--mc-rollouts", opt.cfg.mc_rollouts, "Rollouts for mc evaluation");
    sub->add_option("--out", opt.cfg.out_dir, "Output directory");
    sub->add_option("--config", opt.config_path, "JSON config file (overrides flags)");
    sub->add_option("--model", opt.model_path, "Model JSON file");
    sub->add_option("--threads", opt.cfg.threads, "Worker threads (0 = auto)");
    sub->add_option("--lambda-max", opt.lambda_max_flag,
                    "Fixed rate cap (default: 1.5 x max observed demand)");
    sub->add_flag("--strict", opt.cfg.strict, "Fail hard when a learner cannot act");
    sub->add_flag("--include-greedy", opt.cfg.include_greedy, "Also run the greedy learner");
}

EvalMode parse_eval(const std::string& name) {
    if (name == "exact") return EvalMode::exact;
    if (name == "mc") return EvalMode::mc;
    throw std::invalid_argument("--eval must be 'exact' or 'mc'");
}

// The config file wins over flags wherever it specifies a key.
void apply_config_file(CliOptions& opt) {
    if (opt.config_path.empty()) return;
    const json j = json::parse(pricing::io::read_text_file(opt.config_path));
    if (j.contains("model"))
        opt.cfg.model = pricing::io::model_from_json(j.at("model").dump());
    if (j.contains("model_path")) opt.model_path = j.at("model_path").get<std::string>();
    if (j.contains("scenario")) opt.cfg.scenario = j.at("scenario").get<int>();
    if (j.contains("n")) opt.cfg.n = j.at("n").get<int>();
    if (j.contains("reps")) opt.cfg.replications = j.at("reps").get<int>();
    if (j.contains("c")) opt.cfg.c = j.at("c").get<double>();
    if (j.contains("grid")) opt.cfg.grid_points = j.at("grid").get<int>();
    if (j.contains("seed")) opt.cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("eval")) opt.eval_name = j.at("eval").get<std::string>();
    if (j.contains("mc_rollouts")) opt.cfg.mc_rollouts = j.at("mc_rollouts").get<int>();
    if (j.contains("out")) opt.cfg.out_dir = j.at("out").get<std::string>();
    if (j.contains("strict")) opt.cfg.strict = j.at("strict").get<bool>();
    if (j.contains("include_greedy"))
        opt.cfg.include_greedy = j.at("include_greedy").get<bool>();
    if (j.contains("threads")) opt.cfg.threads = j.at("threads").get<int>();
    if (j.contains("lambda_max")) opt.lambda_max_flag = j.at("lambda_max").get<double>();
    if (j.contains("scenarios")) opt.scenarios = j.at("scenarios").get<std::vector<int>>();
    if (j.contains("n_list")) opt.n_list = j.at("n_list").get<std::vector<int>>();
}

void finalize(CliOptions& opt) {
    apply_config_file(opt);
    if (!opt.model_path.empty()) opt.cfg.model = pricing::io::load_model(opt.model_path);
    opt.cfg.eval = parse_eval(opt.eval_name);
    if (opt.lambda_max_flag >= 0.0) opt.cfg.lambda_max_override = opt.lambda_max_flag;
}

void write_file(const std::string& dir, const std::string& name, const std::string& text) {
    pricing::io::write_text_file((fs::path(dir) / name).string(), text);
}

template <typename Fn>
void write_csv(const std::string& dir, const std::string& name, Fn&& fn) {
    fs::create_directories(dir);
    std::ofstream os(fs::path(dir) / name);
    fn(os);
}

int cmd_solve(CliOptions& opt) {
    const auto table = pricing::exp::run_table1(opt.cfg);
    std::cout << table.rendered;
    if (!opt.cfg.out_dir.empty()) {
        const auto& prices = opt.cfg.model.prices;
        write_csv(opt.cfg.out_dir, "optimal_policy.csv", [&](std::ostream& os) {
            pricing::io::write_policy_csv(os, table.solution.policy, prices);
        });
        write_csv(opt.cfg.out_dir, "optimal_q.csv", [&](std::ostream& os) {
            pricing::io::write_qtable_csv(os, table.solution.q, prices);
        });
        write_csv(opt.cfg.out_dir, "optimal_value.csv", [&](std::ostream& os) {
            pricing::io::write_value_csv(os, table.solution.v);
        });
        write_file(opt.cfg.out_dir, "model.json", pricing::io::model_to_json(opt.cfg.model));
    }
    return 0;
}

int cmd_simulate(CliOptions& opt) {
    const auto behavior = pricing::sim::scenario_behavior(opt.cfg.model, opt.cfg.scenario);
    const pricing::sim::SeededRng rng(opt.cfg.seed);
    std::ostringstream csv;
    csv << "replication,trajectory,t,inventory,price,demand\n";
    json manifest;
    for (int r = 0; r < opt.cfg.replications; ++r) {
        auto ds = pricing::sim::generate_dataset(opt.cfg.model, behavior, opt.cfg.n, rng, r);
        ds.scenario = opt.cfg.scenario;
        std::ostringstream one;
        pricing::io::write_dataset_csv(one, ds);
        const std::string text = one.str();
        csv << text.substr(text.find('\n') + 1);
        if (r == 0) manifest = json::parse(pricing::io::dataset_manifest_json(ds));
    }
    manifest["replications"] = opt.cfg.replications;
    const std::string dir = opt.cfg.out_dir.empty() ? "." : opt.cfg.out_dir;
    write_file(dir, "dataset.csv", csv.str());
    write_file(dir, "dataset_manifest.json", manifest.dump(2));
    std::cout << "wrote " << (fs::path(dir) / "dataset.csv").string() << " ("
              << opt.cfg.replications << " replication(s), n=" << opt.cfg.n << ")\n";
    return 0;
}

int cmd_learn(CliOptions& opt) {
    pricing::sim::OfflineDataset ds;
    if (!opt.data_path.empty()) {
        std::ifstream is(opt.data_path);
        if (!is) throw std::invalid_argument("cannot open " + opt.data_path);
        ds = pricing::io::read_dataset_csv(
            is, pricing::io::read_text_file(opt.manifest_path.empty()
                                                ? (fs::path(opt.data_path).parent_path() /
                                                   "dataset_manifest.json")
                                                      .string()
                                                : opt.manifest_path));
    } else {
        const auto behavior = pricing::sim::scenario_behavior(opt.cfg.model, opt.cfg.scenario);
        const pricing::sim::SeededRng rng(opt.cfg.seed);
        ds = pricing::sim::generate_dataset(opt.cfg.model, behavior, opt.cfg.n, rng, 0);
        ds.scenario = opt.cfg.scenario;
    }

    pricing::learn::LearnerConfig lcfg;
    lcfg.c = opt.cfg.c;
    lcfg.grid_points = opt.cfg.grid_points;
    lcfg.lambda_min = opt.cfg.model.lambda_min;
    lcfg.lambda_max = opt.cfg.lambda_max_override
                          ? *opt.cfg.lambda_max_override
                          : std::max(opt.cfg.model.lambda_min, 1.5 * ds.max_demand());

    std::vector<std::pair<std::string, pricing::learn::LearnerOutput>> fits;
    auto want = [&](const std::string& name) {
        return opt.method == "all" || opt.method == name;
    };
    try {
        if (want("greedy")) fits.emplace_back("greedy", pricing::learn::learn_greedy(ds, lcfg));
        if (want("vanilla"))
            fits.emplace_back("vanilla_pess",
                              pricing::learn::learn_vanilla_pessimistic(ds, lcfg));
        if (want("refined"))
            fits.emplace_back("refined_pess",
                              pricing::learn::learn_refined_pessimistic(ds, lcfg));
        if (want("opportunistic"))
            fits.emplace_back("opportunistic", pricing::learn::learn_opportunistic(ds, lcfg));
    } catch (const pricing::learn::UnlearnableError& e) {
        std::cerr << "unlearnable: " << e.what() << '\n';
        return opt.cfg.strict ? 3 : 0;
    }
    if (fits.empty()) throw std::invalid_argument("unknown --method " + opt.method);

    const auto init =
        pricing::point_mass(opt.cfg.model.max_inventory, opt.cfg.model.max_inventory);
    const double opt_value =
        pricing::evaluate_policy_exact(opt.cfg.model, pricing::solve_optimal(opt.cfg.model).policy,
                                       init)
            .initial_value;
    std::cout << "optimal value " << opt_value << '\n';
    for (const auto& [name, out] : fits) {
        const double value =
            pricing::evaluate_policy_exact(opt.cfg.model, out.policy, init).initial_value;
        std::cout << name << ": value " << value << "  regret " << opt_value - value << '\n';
        if (!opt.cfg.out_dir.empty())
            pricing::io::export_learner(out, ds.prices, opt.cfg.out_dir, name);
    }
    return 0;
}

int cmd_evaluate(CliOptions& opt) {
    if (opt.policy_path.empty()) throw std::invalid_argument("evaluate needs --policy FILE");
    std::ifstream is(opt.policy_path);
    if (!is) throw std::invalid_argument("cannot open " + opt.policy_path);
    const auto policy = pricing::io::read_policy_csv(is, opt.cfg.model);
    const auto init =
        pricing::point_mass(opt.cfg.model.max_inventory, opt.cfg.model.max_inventory);
    if (opt.cfg.eval == EvalMode::exact) {
        const auto pv = pricing::evaluate_policy_exact(opt.cfg.model, policy, init);
        std::cout << "exact value " << pv.initial_value << '\n';
    } else {
        const pricing::sim::SeededRng rng(opt.cfg.seed);
        const auto mc = pricing::evaluate_policy_mc(opt.cfg.model, policy, opt.cfg.mc_rollouts,
                                                    rng, init);
        std::cout << "mc value " << mc.mean << " (se " << mc.std_error << ", rollouts "
                  << mc.rollouts << ")\n";
    }
    return 0;
}

int cmd_experiment(CliOptions& opt) {
    std::vector<int> scenarios = opt.scenarios;
    if (scenarios.empty()) scenarios = {opt.cfg.scenario};
    std::vector<pricing::exp::ResultRow> all_rows;
    std::vector<pricing::exp::SummaryRow> all_summaries;
    double opt_value = 0.0;
    for (int scen : scenarios) {
        ExperimentConfig cfg = opt.cfg;
        cfg.scenario = scen;
        const auto result = pricing::exp::run_experiment(cfg);
        opt_value = result.optimal_value;
        all_rows.insert(all_rows.end(), result.rows.begin(), result.rows.end());
        all_summaries.insert(all_summaries.end(), result.summary.begin(), result.summary.end());
        for (const auto& s : result.summary)
            std::cout << "scenario " << scen << "  " << s.method << ": mean " << s.mean << "  sd "
                      << s.sd << "  (optimal " << result.optimal_value << ")\n";
    }
    if (!opt.cfg.out_dir.empty()) {
        write_csv(opt.cfg.out_dir, "results.csv", [&](std::ostream& os) {
            pricing::io::write_results_csv(os, all_rows);
        });
        write_csv(opt.cfg.out_dir, "summary.csv", [&](std::ostream& os) {
            pricing::io::write_summary_csv(os, all_summaries);
        });
        pricing::exp::ExperimentResult merged;
        merged.rows = all_rows;
        merged.summary = all_summaries;
        merged.optimal_value = opt_value;
        merged.eval = opt.cfg.eval;
        write_file(opt.cfg.out_dir, "summary.json", pricing::io::summary_to_json(merged));
    }
    return 0;
}

int cmd_sweep(CliOptions& opt) {
    std::vector<int> ns = opt.n_list;
    if (ns.empty()) ns = {20, 80, 320, 1280};
    const auto sweep = pricing::exp::run_regret_sweep(opt.cfg, ns);
    for (const auto& p : sweep.points)
        std::cout << "n=" << p.n << "  " << p.method << ": mean regret " << p.mean_regret << '\n';
    for (const auto& [method, slope] : sweep.slopes)
        std::cout << method << " log-log slope " << slope << '\n';
    if (!opt.cfg.out_dir.empty()) {
        write_csv(opt.cfg.out_dir, "sweep.csv", [&](std::ostream& os) {
            pricing::io::write_sweep_csv(os, sweep);
        });
    }
    return 0;
}

int cmd_bounds(CliOptions& opt) {
    const auto& model = opt.cfg.model;
    const auto behavior = pricing::sim::scenario_behavior(model, opt.cfg.scenario);
    const pricing::sim::SeededRng rng(opt.cfg.seed);
    auto ds = pricing::sim::generate_dataset(model, behavior, opt.cfg.n, rng, 0);
    ds.scenario = opt.cfg.scenario;

    const double lmax = opt.cfg.lambda_max_override
                            ? *opt.cfg.lambda_max_override
                            : std::max(model.lambda_min, 1.5 * ds.max_demand());
    const auto est = pricing::ident::estimate_lambdas(ds, opt.cfg.c);
    const auto intervals = pricing::ident::refined_intervals(est, model.lambda_min, lmax);

    const auto init = pricing::point_mass(model.max_inventory, model.max_inventory);
    const auto opt_marg =
        pricing::price_marginals(model, pricing::solve_optimal(model).policy, init);
    const auto beh_marg = pricing::price_marginals(model, behavior, init);
    const auto report =
        pricing::analysis::bound_components(model, ds, est, opt_marg, beh_marg, opt.cfg.c);

    std::cout << "term1 " << report.term1 << "  term2 " << report.term2
              << "  probability floor " << report.probability_floor << '\n';
    const std::string dir = opt.cfg.out_dir.empty() ? "." : opt.cfg.out_dir;
    write_csv(dir, "intervals.csv", [&](std::ostream& os) {
        pricing::io::write_intervals_csv(os, intervals);
    });
    write_csv(dir, "bound_cells.csv", [&](std::ostream& os) {
        pricing::io::write_bound_cells_csv(os, report, model.prices);
    });
    write_file(dir, "bound_report.json", pricing::io::bound_report_to_json(report));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Offline dynamic pricing toolkit"};
    app.require_subcommand(1);
    CliOptions opt;

    auto* solve = app.add_subcommand("solve", "Exact optimal pricing table");
    auto* simulate = app.add_subcommand("simulate", "Generate offline datasets");
    auto* learn = app.add_subcommand("learn", "Fit offline learners on one dataset");
    auto* evaluate = app.add_subcommand("evaluate", "Evaluate a policy CSV");
    auto* experiment = app.add_subcommand("experiment", "Replication study");
    auto* sweep = app.add_subcommand("sweep", "Mean regret vs dataset size");
    auto* bounds = app.add_subcommand("bounds", "Intervals and regret-bound components");

    for (auto* sub : {solve, simulate, learn, evaluate, experiment, sweep, bounds})
        add_common_flags(sub, opt);
    learn->add_option("--data", opt.data_path, "Dataset CSV (default: simulate per scenario)");
    learn->add_option("--manifest", opt.manifest_path, "Dataset manifest JSON");
    learn->add_option("--method", opt.method,
                      "all|greedy|vanilla|refined|opportunistic (default all)");
    evaluate->add_option("--policy", opt.policy_path, "Policy CSV")->required();
    experiment->add_option("--scenarios", opt.scenarios, "Scenario list (default: --scenario)");
    sweep->add_option("--n-list", opt.n_list, "Dataset sizes (default 20 80 320 1280)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        finalize(opt);
        opt.cfg.validate();
        if (solve->parsed()) return cmd_solve(opt);
        if (simulate->parsed()) return cmd_simulate(opt);
        if (learn->parsed()) return cmd_learn(opt);
        if (evaluate->parsed()) return cmd_evaluate(opt);
        if (experiment->parsed()) return cmd_experiment(opt);
        if (sweep->parsed()) return cmd_sweep(opt);
        if (bounds->parsed()) return cmd_bounds(opt);
    } catch (const pricing::learn::UnlearnableError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
