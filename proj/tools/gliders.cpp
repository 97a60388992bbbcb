#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gliders/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Entry-time experiments for the gliders automaton"};
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> out;
  app.add_option("--config", config_path, "experiment config file")->required()->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "override the config seed");
  app.add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out, "output directory");
  app.set_version_flag("--version", gliders::cli::version_string());
  CLI11_PARSE(app, argc, argv);

  std::ifstream in(config_path);
  std::ostringstream text;
  text << in.rdbuf();
  gliders::cli::ExperimentConfig config;
  try {
    config = gliders::cli::parse_config(text.str());
  } catch (const std::exception& e) {
    std::cerr << config_path << ": " << e.what() << '\n';
    return 2;
  }
  if (seed) config.seed = *seed;
  if (workers) config.workers = *workers;
  if (out) config.out = *out;
  return gliders::cli::run(config, std::cout, std::cerr);
}
