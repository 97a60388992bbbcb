#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gliders/ca.hpp"
#include "gliders/entry_time.hpp"
#include "gliders/error.hpp"

namespace gliders::cli {

enum class Command { simulate, entrytime, factor_entrytime, factor_check, oracle, mix_diagnose };

std::string to_string(Command command);

/// Parse failure; the message starts with "line N:" when a line is to blame.
class ConfigError : public ContractError {
public:
  using ContractError::ContractError;
};

struct SamplerConfig {
  std::string kind;  // bernoulli | markov | dirac; empty when unused
  std::vector<double> probabilities;
  std::vector<double> matrix;  // row-major
  std::vector<double> stationary;
  std::vector<int> word;  // signed values for gliders commands, raw states for factors
  bool uniform_phase = true;

  bool operator==(const SamplerConfig&) const = default;
};

/// One experiment, as read from a `key = value` config file.
struct ExperimentConfig {
  Command command = Command::entrytime;
  std::optional<std::pair<int, int>> rule;  // (v_minus, v_plus)
  std::string factor;
  SamplerConfig sampler;

  Index n = 0;
  std::vector<double> xs;
  Index trials = 0;
  std::optional<Index> horizon;  // empty = auto, ceil(n * max(xs))
  Side side = Side::minus;

  std::uint64_t seed = 0;
  int workers = 1;
  std::string out = ".";

  // simulate
  Index width = 0;
  Index steps = 0;

  // factor-check
  Index samples = 1000;
  Index check_width = 500;
  int exhaustive_width = 0;

  // oracle
  std::vector<double> ys;
  std::vector<double> zs;
  double epsilon = 0;
  Index walk_steps = 10000;
  double increment_p = 0.5;

  // mix-diagnose
  Index sample_length = 0;
  Index lag = 0;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Grammar: one `key = value` per line, `#` starts a comment, lists are
/// comma separated, and a `[command]` header may stand in for
/// `command = ...`. Unknown keys, duplicate keys, type mismatches and
/// missing required keys are reported with their line number.
ExperimentConfig parse_config(const std::string& text);

/// Inverse of parse_config: parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

/// FNV-1a of the serialized config, 16 hex digits.
std::string config_digest(const ExperimentConfig& config);

std::string version_string();

/// Executes the experiment, writing files under config.out and a one-line
/// summary per result row to `summary`. Returns the process exit status.
int run(const ExperimentConfig& config, std::ostream& summary, std::ostream& log);

}  // namespace gliders::cli
