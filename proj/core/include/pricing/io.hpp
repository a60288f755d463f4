#pragma once

#include <iosfwd>
#include <string>

#include "pricing/analysis.hpp"
#include "pricing/experiments.hpp"

namespace pricing::io {

// Model <-> JSON document {horizon, max_inventory, prices, lambda,
// lambda_min, lambda_max}.
std::string model_to_json(const PricingModel& model);
PricingModel model_from_json(const std::string& text);
void save_model(const PricingModel& model, const std::string& path);
PricingModel load_model(const std::string& path);

// Tables -> CSV. Time indices are 1-based in all files.
void write_qtable_csv(std::ostream& os, const QTable& q, const std::vector<double>& prices);
void write_value_csv(std::ostream& os, const ValueTable& v);
void write_policy_csv(std::ostream& os, const PolicyTable& policy,
                      const std::vector<double>& prices);
PolicyTable read_policy_csv(std::istream& is, const PricingModel& model);

// Dataset CSV (replication, trajectory, t, inventory, price, demand) and its
// JSON manifest (seed, scenario, n, horizon, prices, max_inventory).
void write_dataset_csv(std::ostream& os, const sim::OfflineDataset& dataset);
std::string dataset_manifest_json(const sim::OfflineDataset& dataset);
sim::OfflineDataset read_dataset_csv(std::istream& is, const std::string& manifest_json);

void write_intervals_csv(std::ostream& os, const ident::IntervalSet& set);

// Learner exports: policy, criterion table, chosen rates, regret matrix.
void export_learner(const learn::LearnerOutput& out, const std::vector<double>& prices,
                    const std::string& dir, const std::string& stem);

void write_results_csv(std::ostream& os, const std::vector<exp::ResultRow>& rows);
void write_summary_csv(std::ostream& os, const std::vector<exp::SummaryRow>& rows);
std::string summary_to_json(const exp::ExperimentResult& result);
void write_sweep_csv(std::ostream& os, const exp::SweepResult& sweep);

std::string decomposition_to_json(const analysis::DecompositionReport& report);
std::string bound_report_to_json(const analysis::BoundReport& report);
void write_bound_cells_csv(std::ostream& os, const analysis::BoundReport& report,
                           const std::vector<double>& prices);

// Small helpers shared by the CLI.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace pricing::io
