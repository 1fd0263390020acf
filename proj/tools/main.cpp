#include <iostream>

#include <CLI11.hpp>

#include "steklov/version.hpp"
#include "steklov_cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace steklov::cli;

  CLI::App app{"Steklov spectra and lower bounds on surfaces of revolution", "steklov"};
  app.set_version_flag("--version", std::string(steklov::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  Overrides overrides;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"ball-spectrum", "Steklov eigenvalues of a geodesic ball"},
      {"spectrum", "Steklov eigenvalues of a star-shaped domain"},
      {"verify", "compare lower bounds with computed eigenvalues"},
      {"sweep", "bound/eigenvalue ratio along a shrinking perturbation"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "key=value run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out-json", overrides.out_json, "write the JSON result here");
    sub->add_option("--out-csv", overrides.out_csv, "write the CSV result here");
    sub->add_option("--jobs", overrides.jobs, "worker threads for verify")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", overrides.seed, "seed of the random domain suite");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  RunConfig config;
  try {
    config = apply_overrides(load_config(config_path), overrides);
  } catch (const steklov::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return run_command(app.get_subcommands().front()->get_name(), config);
}
