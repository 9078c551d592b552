#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vasclab/cli/config.hpp"
#include "vasclab/cli/experiments.hpp"
#include "vasclab/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"vasclab: numerical lab for the hyperbolic-parabolic vasculogenesis model"};
  std::string config_path, output;
  bool quiet = false;
  app.add_option("--config", config_path, "experiment config file")->required()->check(CLI::ExistingFile);
  app.add_option("--output", output, "output directory (overrides output_dir)");
  app.add_flag("--quiet", quiet, "suppress per-criterion lines");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : vasclab::cli::exit_config;
  }

  vasclab::cli::ExperimentConfig config;
  try {
    config = vasclab::cli::load_config(config_path);
  } catch (const vasclab::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return vasclab::cli::exit_config;
  } catch (const vasclab::Error& e) {
    std::cerr << e.what() << '\n';
    return vasclab::cli::exit_config;
  }
  const auto outcome = vasclab::cli::run_experiment(config, output, quiet);
  if (!quiet) std::cout << (outcome.exit_code == 0 ? "all criteria passed" : "exit " + std::to_string(outcome.exit_code)) << '\n';
  return outcome.exit_code;
}
