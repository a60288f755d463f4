#include "pricing/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pricing::io {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

}  // namespace

std::string model_to_json(const PricingModel& model) {
    json j;
    j["horizon"] = model.horizon;
    j["max_inventory"] = model.max_inventory;
    j["prices"] = model.prices;
    j["lambda"] = model.lambda;
    j["lambda_min"] = model.lambda_min;
    j["lambda_max"] = model.lambda_max;
    return j.dump(2);
}

PricingModel model_from_json(const std::string& text) {
    const json j = json::parse(text);
    PricingModel m;
    m.horizon = j.at("horizon").get<int>();
    m.max_inventory = j.at("max_inventory").get<int>();
    m.prices = j.at("prices").get<std::vector<double>>();
    m.lambda = j.at("lambda").get<std::vector<std::vector<double>>>();
    m.lambda_min = j.at("lambda_min").get<double>();
    m.lambda_max = j.at("lambda_max").get<double>();
    m.validate();
    return m;
}

void save_model(const PricingModel& model, const std::string& path) {
    write_text_file(path, model_to_json(model));
}

PricingModel load_model(const std::string& path) { return model_from_json(read_text_file(path)); }

void write_qtable_csv(std::ostream& os, const QTable& q, const std::vector<double>& prices) {
    os << "t,x,a,value\n";
    for (int t = 0; t < q.horizon(); ++t)
        for (int x = 0; x <= q.max_inventory(); ++x)
            for (int k = 0; k < q.num_prices(); ++k)
                os << t + 1 << ',' << x << ',' << prices[k] << ',' << fmt(q.at(t, x, k)) << '\n';
}

void write_value_csv(std::ostream& os, const ValueTable& v) {
    os << "t,x,value\n";
    for (int t = 0; t <= v.horizon(); ++t)
        for (int x = 0; x <= v.max_inventory(); ++x)
            os << t + 1 << ',' << x << ',' << fmt(v.at(t, x)) << '\n';
}

void write_policy_csv(std::ostream& os, const PolicyTable& policy,
                      const std::vector<double>& prices) {
    if (policy.deterministic) {
        os << "t,x,price\n";
        for (int t = 0; t < policy.horizon(); ++t)
            for (int x = 0; x <= policy.max_inventory(); ++x)
                os << t + 1 << ',' << x << ',' << prices[policy.one_hot_action(t, x)] << '\n';
        return;
    }
    os << "t,x,price,prob\n";
    for (int t = 0; t < policy.horizon(); ++t)
        for (int x = 0; x <= policy.max_inventory(); ++x)
            for (int k = 0; k < policy.num_prices(); ++k)
                os << t + 1 << ',' << x << ',' << prices[k] << ',' << fmt(policy.prob(t, x, k))
                   << '\n';
}

PolicyTable read_policy_csv(std::istream& is, const PricingModel& model) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("policy csv: empty file");
    const bool stochastic = line.find("prob") != std::string::npos;
    PolicyTable policy(model.horizon, model.max_inventory, model.num_prices());
    policy.deterministic = !stochastic;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        const int t = std::stoi(f.at(0)) - 1;
        const int x = std::stoi(f.at(1));
        const double price = std::stod(f.at(2));
        int k = -1;
        for (int j = 0; j < model.num_prices(); ++j)
            if (std::abs(model.prices[j] - price) < 1e-9) k = j;
        if (k < 0) throw std::invalid_argument("policy csv: price not on the model grid");
        if (stochastic)
            policy.set_prob(t, x, k, std::stod(f.at(3)));
        else
            policy.set_one_hot(t, x, k);
    }
    policy.validate();
    return policy;
}

void write_dataset_csv(std::ostream& os, const sim::OfflineDataset& dataset) {
    os << "replication,trajectory,t,inventory,price,demand\n";
    for (int i = 0; i < dataset.size(); ++i)
        for (int t = 0; t < dataset.horizon; ++t) {
            const auto& s = dataset.trajectories[i].steps[t];
            os << dataset.replication << ',' << i << ',' << t + 1 << ',' << s.inventory << ','
               << dataset.prices[s.price_index] << ',' << s.demand << '\n';
        }
}

std::string dataset_manifest_json(const sim::OfflineDataset& dataset) {
    json j;
    j["seed"] = dataset.seed;
    j["scenario"] = dataset.scenario;
    j["n"] = dataset.size();
    j["horizon"] = dataset.horizon;
    j["max_inventory"] = dataset.max_inventory;
    j["prices"] = dataset.prices;
    j["replication"] = dataset.replication;
    return j.dump(2);
}

sim::OfflineDataset read_dataset_csv(std::istream& is, const std::string& manifest_json) {
    const json j = json::parse(manifest_json);
    sim::OfflineDataset ds;
    ds.seed = j.at("seed").get<std::uint64_t>();
    ds.scenario = j.at("scenario").get<int>();
    ds.horizon = j.at("horizon").get<int>();
    ds.max_inventory = j.at("max_inventory").get<int>();
    ds.prices = j.at("prices").get<std::vector<double>>();
    ds.replication = j.value("replication", 0ULL);
    ds.trajectories.resize(j.at("n").get<int>());
    for (auto& traj : ds.trajectories) traj.steps.resize(ds.horizon);

    // Files may hold several replications; only the manifest's one is read,
    // and every (trajectory, period) cell must be filled exactly once.
    std::vector<std::vector<int>> filled(ds.trajectories.size(),
                                         std::vector<int>(ds.horizon, 0));
    std::string line;
    std::getline(is, line);  // header
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (std::stoull(f.at(0)) != ds.replication) continue;
        const int i = std::stoi(f.at(1));
        const int t = std::stoi(f.at(2)) - 1;
        const double price = std::stod(f.at(4));
        int k = -1;
        for (int p = 0; p < ds.num_prices(); ++p)
            if (std::abs(ds.prices[p] - price) < 1e-9) k = p;
        if (k < 0) throw std::invalid_argument("dataset csv: price not on the manifest grid");
        ds.trajectories.at(i).steps.at(t) = {std::stoi(f.at(3)), k, std::stoi(f.at(5))};
        ++filled.at(i).at(t);
    }
    for (const auto& row : filled)
        for (int count : row)
            if (count != 1)
                throw std::invalid_argument(
                    "dataset csv: incomplete or duplicated rows for the manifest replication");
    return ds;
}

void write_intervals_csv(std::ostream& os, const ident::IntervalSet& set) {
    os << "t,price,lower,upper,lower_source,upper_source,clamped\n";
    for (int t = 0; t < set.horizon; ++t)
        for (int k = 0; k < set.num_prices(); ++k) {
            const auto& c = set.at(t, k);
            os << t + 1 << ',' << set.prices[k] << ',' << fmt(c.lower) << ',' << fmt(c.upper)
               << ',';
            if (c.lower_source) os << set.prices[*c.lower_source];
            os << ',';
            if (c.upper_source) os << set.prices[*c.upper_source];
            os << ',' << (c.clamped ? 1 : 0) << '\n';
        }
}

void export_learner(const learn::LearnerOutput& out, const std::vector<double>& prices,
                    const std::string& dir, const std::string& stem) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const auto base = fs::path(dir) / stem;
    {
        std::ofstream os(base.string() + "_policy.csv");
        write_policy_csv(os, out.policy, prices);
    }
    {
        std::ofstream os(base.string() + "_q.csv");
        write_qtable_csv(os, out.q, prices);
    }
    {
        std::ofstream os(base.string() + "_value.csv");
        write_value_csv(os, out.v);
    }
    if (!out.lambda_choice.empty()) {
        std::ofstream os(base.string() + "_lambda.csv");
        write_qtable_csv(os, out.lambda_choice, prices);
    }
    if (!out.regret_matrix.empty()) {
        std::ofstream os(base.string() + "_regret.csv");
        write_qtable_csv(os, out.regret_matrix, prices);
    }
}

void write_results_csv(std::ostream& os, const std::vector<exp::ResultRow>& rows) {
    os << "scenario,method,replication,value,regret,runtime_ms,failed,error\n";
    for (const auto& r : rows)
        os << r.scenario << ',' << r.method << ',' << r.replication << ',' << fmt(r.value) << ','
           << fmt(r.regret) << ',' << fmt(r.runtime_ms) << ',' << (r.failed ? 1 : 0) << ','
           << r.error << '\n';
}

void write_summary_csv(std::ostream& os, const std::vector<exp::SummaryRow>& rows) {
    os << "scenario,method,count,mean,sd,min,q25,median,q75,max\n";
    for (const auto& s : rows)
        os << s.scenario << ',' << s.method << ',' << s.count << ',' << fmt(s.mean) << ','
           << fmt(s.sd) << ',' << fmt(s.min) << ',' << fmt(s.q25) << ',' << fmt(s.median) << ','
           << fmt(s.q75) << ',' << fmt(s.max) << '\n';
}

std::string summary_to_json(const exp::ExperimentResult& result) {
    json j;
    j["optimal_value"] = result.optimal_value;
    j["eval"] = exp::eval_mode_name(result.eval);
    j["summary"] = json::array();
    for (const auto& s : result.summary) {
        json row;
        row["scenario"] = s.scenario;
        row["method"] = s.method;
        row["count"] = s.count;
        row["mean"] = s.mean;
        row["sd"] = s.sd;
        row["min"] = s.min;
        row["q25"] = s.q25;
        row["median"] = s.median;
        row["q75"] = s.q75;
        row["max"] = s.max;
        j["summary"].push_back(row);
    }
    return j.dump(2);
}

void write_sweep_csv(std::ostream& os, const exp::SweepResult& sweep) {
    os << "n,method,mean_regret\n";
    for (const auto& p : sweep.points)
        os << p.n << ',' << p.method << ',' << fmt(p.mean_regret) << '\n';
}

std::string decomposition_to_json(const analysis::DecompositionReport& report) {
    json j;
    j["mu"] = report.mu;
    j["j1"] = report.j1;
    j["j2"] = report.j2;
    j["j3"] = report.j3;
    j["residual"] = report.residual;
    return j.dump(2);
}

std::string bound_report_to_json(const analysis::BoundReport& report) {
    json j;
    j["term1"] = report.term1;
    j["term2"] = report.term2;
    j["probability_floor"] = report.probability_floor;
    j["kappa"] = report.kappa;
    return j.dump(2);
}

void write_bound_cells_csv(std::ostream& os, const analysis::BoundReport& report,
                           const std::vector<double>& prices) {
    os << "t,price,p_opt,p_beh,in_m,n,eta\n";
    for (const auto& c : report.cells)
        os << c.t + 1 << ',' << prices[c.k] << ',' << fmt(c.p_opt) << ',' << fmt(c.p_beh) << ','
           << (c.in_m ? 1 : 0) << ',' << c.n << ',' << fmt(c.eta) << '\n';
}

void write_text_file(const std::string& path, const std::string& text) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << text;
}

std::string read_text_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace pricing::io
