#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "vasclab/cli/config.hpp"

namespace vasclab::cli {

enum ExitCode : int { exit_pass = 0, exit_criterion = 1, exit_config = 2, exit_numerical = 3 };

struct CriterionResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ExperimentOutcome {
  Experiment experiment = Experiment::sk_check;
  std::vector<CriterionResult> criteria;
  std::map<std::string, double> metrics;
  std::vector<std::string> notes;
  int exit_code = exit_pass;
  std::string error_kind;  // empty unless an exception ended the experiment
  std::string error_message;
  std::vector<std::string> violations;

  bool all_pass() const;
};

/// Runs the configured experiment, writes config.resolved.ini, summary.json
/// and the experiment's CSVs into `output_dir` (config.output_dir when empty),
/// and reports every criterion. Errors are caught and mapped to exit codes.
ExperimentOutcome run_experiment(const ExperimentConfig& config, const std::filesystem::path& output_dir = {},
                                 bool quiet = true);

/// Same without touching the file system.
ExperimentOutcome evaluate_experiment(const ExperimentConfig& config);

/// summary.json body; deterministic for a given outcome.
std::string summary_json(const ExperimentConfig& config, const ExperimentOutcome& outcome);

}  // namespace vasclab::cli
