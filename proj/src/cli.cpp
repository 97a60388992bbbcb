#include "gliders/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gliders/factors.hpp"
#include "gliders/measures.hpp"
#include "gliders/oracle.hpp"

#ifndef GLIDERS_VERSION
#define GLIDERS_VERSION "0.1.0"
#endif

namespace gliders::cli {

namespace {

const std::map<std::string, Command>& command_names() {
  static const std::map<std::string, Command> names{
      {"simulate", Command::simulate},         {"entrytime", Command::entrytime},
      {"factor-entrytime", Command::factor_entrytime}, {"factor-check", Command::factor_check},
      {"oracle", Command::oracle},             {"mix-diagnose", Command::mix_diagnose}};
  return names;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "command", "rule",    "factor",  "sampler",     "probabilities", "matrix",
      "stationary", "word", "phase",   "n",           "xs",            "trials",
      "horizon", "side",    "seed",    "workers",     "out",           "width",
      "steps",   "samples", "check_width", "exhaustive_width", "ys",   "zs",
      "epsilon", "walk_steps", "increment_p", "sample_length", "lag"};
  return keys;
}

struct Entry {
  std::string value;
  int line;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw ConfigError("line " + std::to_string(line) + ": " + message);
}

std::vector<std::string> split_list(const std::string& value) {
  std::string v = trim(value);
  if (v.size() >= 2 && v.front() == '(' && v.back() == ')') v = v.substr(1, v.size() - 2);
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

long long to_integer(const std::string& text, const Entry& e, const std::string& key) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    fail(e.line, key + ": expected an integer, got '" + text + "'");
  }
}

double to_real(const std::string& text, const Entry& e, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    fail(e.line, key + ": expected a number, got '" + text + "'");
  }
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& values, F format) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format(values[i]);
  }
  return out;
}

bool needs_gliders_sampler(Command c) {
  return c == Command::simulate || c == Command::entrytime || c == Command::mix_diagnose;
}

}  // namespace

std::string to_string(Command command) {
  for (const auto& [name, c] : command_names())
    if (c == command) return name;
  return "?";
}

namespace {

SamplerSpec build_sampler(const SamplerConfig& s, int alphabet_size, bool signed_word,
                          std::uint64_t seed) {
  if (s.kind == "bernoulli") {
    if (static_cast<int>(s.probabilities.size()) != alphabet_size)
      throw ContractError("bernoulli needs " + std::to_string(alphabet_size) +
                          " probabilities, got " + std::to_string(s.probabilities.size()));
    return SamplerSpec::bernoulli(s.probabilities, seed);
  }
  if (s.kind == "markov") {
    const std::size_t k = static_cast<std::size_t>(alphabet_size);
    if (s.matrix.size() != k * k)
      throw ContractError("markov matrix needs " + std::to_string(k * k) + " entries (row-major)");
    std::vector<std::vector<double>> rows(k);
    for (std::size_t i = 0; i < k; ++i)
      rows[i].assign(s.matrix.begin() + static_cast<long>(i * k),
                     s.matrix.begin() + static_cast<long>((i + 1) * k));
    return SamplerSpec::markov(rows, s.stationary, seed);
  }
  if (s.kind == "dirac") {
    std::vector<State> word;
    for (int v : s.word) {
      const int state = signed_word ? v + 1 : v;
      if (state < 0 || state >= alphabet_size)
        throw ContractError("word value " + std::to_string(v) + " outside the alphabet");
      word.push_back(static_cast<State>(state));
    }
    return SamplerSpec::dirac_periodic(word, alphabet_size, s.uniform_phase, seed);
  }
  throw ContractError("sampler must be bernoulli, markov or dirac, got '" + s.kind + "'");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  std::map<std::string, Entry> entries;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  int header_line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    if (content.front() == '[') {
      if (content.back() != ']') fail(line, "unterminated section header");
      if (entries.count("command")) fail(line, "command given twice");
      entries["command"] = {trim(content.substr(1, content.size() - 2)), line};
      header_line = line;
      continue;
    }
    const auto eq = content.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (!known_keys().count(key)) fail(line, "unknown key '" + key + "'");
    if (entries.count(key)) fail(line, "duplicate key '" + key + "'");
    if (value.empty()) fail(line, key + ": empty value");
    entries[key] = {value, line};
    if (key == "command") header_line = line;
  }
  if (!entries.count("command")) fail(line + 1, "missing required key 'command'");

  ExperimentConfig c;
  {
    const Entry& e = entries["command"];
    const auto it = command_names().find(e.value);
    if (it == command_names().end()) fail(e.line, "unknown command '" + e.value + "'");
    c.command = it->second;
  }
  auto has = [&](const char* key) { return entries.count(key) > 0; };
  auto require = [&](const char* key) -> const Entry& {
    if (!has(key))
      fail(header_line, "missing required key '" + std::string(key) + "' for command " +
                            to_string(c.command));
    return entries.at(key);
  };
  auto integer = [&](const char* key) {
    const Entry& e = entries.at(key);
    return to_integer(e.value, e, key);
  };
  auto real = [&](const char* key) {
    const Entry& e = entries.at(key);
    return to_real(e.value, e, key);
  };
  auto reals = [&](const char* key) {
    const Entry& e = entries.at(key);
    std::vector<double> out;
    for (const auto& item : split_list(e.value)) out.push_back(to_real(item, e, key));
    return out;
  };
  auto integers = [&](const char* key) {
    const Entry& e = entries.at(key);
    std::vector<long long> out;
    for (const auto& item : split_list(e.value)) out.push_back(to_integer(item, e, key));
    return out;
  };
  auto line_of = [&](const char* key) { return entries.count(key) ? entries.at(key).line : header_line; };

  if (has("rule")) {
    const auto v = integers("rule");
    if (v.size() != 2) fail(line_of("rule"), "rule: expected 'v_minus, v_plus'");
    if (v[0] >= 0)
      fail(line_of("rule"), "rule: v_minus must be < 0 (the entry-time law needs v_minus < 0 <= v_plus)");
    if (v[1] < 0) fail(line_of("rule"), "rule: v_plus must be >= 0");
    c.rule = std::make_pair(static_cast<int>(v[0]), static_cast<int>(v[1]));
  }
  if (has("factor")) {
    c.factor = entries["factor"].value;
    const auto names = factor_names();
    if (std::find(names.begin(), names.end(), c.factor) == names.end())
      fail(line_of("factor"), "unknown factor '" + c.factor + "'");
  }
  if (has("sampler")) c.sampler.kind = entries["sampler"].value;
  if (has("probabilities")) c.sampler.probabilities = reals("probabilities");
  if (has("matrix")) c.sampler.matrix = reals("matrix");
  if (has("stationary")) c.sampler.stationary = reals("stationary");
  if (has("word"))
    for (long long v : integers("word")) c.sampler.word.push_back(static_cast<int>(v));
  if (has("phase")) {
    const auto& v = entries["phase"].value;
    if (v != "uniform" && v != "fixed") fail(line_of("phase"), "phase: expected uniform or fixed");
    c.sampler.uniform_phase = v == "uniform";
  }
  if (has("n")) {
    c.n = integer("n");
    if (c.n < 1) fail(line_of("n"), "n must be >= 1");
  }
  if (has("xs")) {
    c.xs = reals("xs");
    for (double x : c.xs)
      if (!(x >= 0) || !std::isfinite(x)) fail(line_of("xs"), "xs: values must be finite and >= 0");
  }
  if (has("trials")) {
    c.trials = integer("trials");
    if (c.trials < 1) fail(line_of("trials"), "trials must be >= 1");
  }
  if (has("horizon") && entries["horizon"].value != "auto") {
    c.horizon = integer("horizon");
    if (*c.horizon < 0) fail(line_of("horizon"), "horizon must be >= 0 or 'auto'");
  }
  if (has("side")) {
    try {
      c.side = parse_side(entries["side"].value);
    } catch (const ContractError& e) {
      fail(line_of("side"), e.what());
    }
  }
  if (has("seed")) {
    const Entry& e = entries["seed"];
    try {
      std::size_t used = 0;
      c.seed = std::stoull(e.value, &used, 0);
      if (used != e.value.size() || e.value.front() == '-') throw std::invalid_argument("seed");
    } catch (const std::exception&) {
      fail(e.line, "seed: expected an unsigned 64-bit integer, got '" + e.value + "'");
    }
  }
  if (has("workers")) {
    c.workers = static_cast<int>(integer("workers"));
    if (c.workers < 1) fail(line_of("workers"), "workers must be >= 1");
  }
  if (has("out")) c.out = entries["out"].value;
  if (has("width")) {
    c.width = integer("width");
    if (c.width < 1) fail(line_of("width"), "width must be >= 1");
  }
  if (has("steps")) {
    c.steps = integer("steps");
    if (c.steps < 0) fail(line_of("steps"), "steps must be >= 0");
  }
  if (has("samples")) {
    c.samples = integer("samples");
    if (c.samples < 0) fail(line_of("samples"), "samples must be >= 0");
  }
  if (has("check_width")) {
    c.check_width = integer("check_width");
    if (c.check_width < 4) fail(line_of("check_width"), "check_width must be >= 4");
  }
  if (has("exhaustive_width")) {
    c.exhaustive_width = static_cast<int>(integer("exhaustive_width"));
    if (c.exhaustive_width < 0 || c.exhaustive_width > 16)
      fail(line_of("exhaustive_width"), "exhaustive_width must be in [0, 16]");
  }
  if (has("ys")) c.ys = reals("ys");
  if (has("zs")) c.zs = reals("zs");
  if (has("epsilon")) c.epsilon = real("epsilon");
  if (has("walk_steps")) {
    c.walk_steps = integer("walk_steps");
    if (c.walk_steps < 1000) fail(line_of("walk_steps"), "walk_steps must be >= 1000");
  }
  if (has("increment_p")) {
    c.increment_p = real("increment_p");
    if (!(c.increment_p > 0 && c.increment_p <= 0.5))
      fail(line_of("increment_p"), "increment_p must be in (0, 1/2]");
  }
  if (has("sample_length")) {
    c.sample_length = integer("sample_length");
    if (c.sample_length < 2) fail(line_of("sample_length"), "sample_length must be >= 2");
  }
  if (has("lag")) {
    c.lag = integer("lag");
    if (c.lag < 0) fail(line_of("lag"), "lag must be >= 0");
  }

  // Per-command requirements.
  switch (c.command) {
    case Command::simulate:
      if (!has("rule") && !has("factor")) require("rule");
      if (has("rule") && has("factor")) fail(line_of("factor"), "give either rule or factor, not both");
      require("sampler");
      require("width");
      require("steps");
      break;
    case Command::entrytime:
      require("rule");
      require("sampler");
      require("n");
      require("xs");
      require("trials");
      if (c.side == Side::plus && c.rule->second == 0)
        fail(line_of("side"), "side = plus needs v_plus > 0");
      break;
    case Command::factor_entrytime:
      require("factor");
      require("sampler");
      require("n");
      require("xs");
      require("trials");
      break;
    case Command::factor_check:
      require("factor");
      break;
    case Command::oracle:
      require("ys");
      require("zs");
      require("trials");
      if (c.ys.size() != c.zs.size() || c.ys.empty())
        fail(line_of("zs"), "ys and zs must be nonempty lists of equal length");
      for (std::size_t i = 0; i < c.ys.size(); ++i)
        if (!(c.ys[i] > 0) || !(c.zs[i] > 0)) fail(line_of("ys"), "ys and zs must be positive");
      if (!(c.epsilon >= 0)) fail(line_of("epsilon"), "epsilon must be >= 0");
      break;
    case Command::mix_diagnose:
      require("sampler");
      require("sample_length");
      require("lag");
      if (c.lag >= c.sample_length) fail(line_of("lag"), "lag must be smaller than sample_length");
      break;
  }
  if (c.horizon && !c.xs.empty() && *c.horizon < horizon_for(c.n, c.xs))
    fail(line_of("horizon"), "horizon must be at least ceil(n * max(xs)) = " +
                                 std::to_string(horizon_for(c.n, c.xs)));
  if (!c.sampler.kind.empty()) {
    int alphabet = kGlidersAlphabet;
    if (!needs_gliders_sampler(c.command) || !c.factor.empty())
      if (!c.factor.empty()) alphabet = factor_by_name(c.factor).source_rule.alphabet_size();
    try {
      build_sampler(c.sampler, alphabet, alphabet == kGlidersAlphabet && c.factor.empty(), c.seed);
    } catch (const ContractError& e) {
      fail(line_of("sampler"), std::string("sampler: ") + e.what());
    }
  }
  return c;
}

std::string serialize_config(const ExperimentConfig& c) {
  const ExperimentConfig d;
  std::ostringstream out;
  auto ints = [](const auto& v) { return join(v, [](auto x) { return std::to_string(x); }); };
  auto reals = [](const std::vector<double>& v) { return join(v, format_real); };
  out << "command = " << to_string(c.command) << '\n';
  if (c.rule) out << "rule = " << c.rule->first << ", " << c.rule->second << '\n';
  if (!c.factor.empty()) out << "factor = " << c.factor << '\n';
  if (!c.sampler.kind.empty()) out << "sampler = " << c.sampler.kind << '\n';
  if (!c.sampler.probabilities.empty()) out << "probabilities = " << reals(c.sampler.probabilities) << '\n';
  if (!c.sampler.matrix.empty()) out << "matrix = " << reals(c.sampler.matrix) << '\n';
  if (!c.sampler.stationary.empty()) out << "stationary = " << reals(c.sampler.stationary) << '\n';
  if (!c.sampler.word.empty()) out << "word = " << ints(c.sampler.word) << '\n';
  if (c.sampler.uniform_phase != d.sampler.uniform_phase)
    out << "phase = " << (c.sampler.uniform_phase ? "uniform" : "fixed") << '\n';
  if (c.n != d.n) out << "n = " << c.n << '\n';
  if (!c.xs.empty()) out << "xs = " << reals(c.xs) << '\n';
  if (c.trials != d.trials) out << "trials = " << c.trials << '\n';
  if (c.horizon) out << "horizon = " << *c.horizon << '\n';
  if (c.side != d.side) out << "side = " << gliders::to_string(c.side) << '\n';
  if (c.seed != d.seed) out << "seed = " << c.seed << '\n';
  if (c.workers != d.workers) out << "workers = " << c.workers << '\n';
  if (c.out != d.out) out << "out = " << c.out << '\n';
  if (c.width != d.width) out << "width = " << c.width << '\n';
  if (c.steps != d.steps) out << "steps = " << c.steps << '\n';
  if (c.samples != d.samples) out << "samples = " << c.samples << '\n';
  if (c.check_width != d.check_width) out << "check_width = " << c.check_width << '\n';
  if (c.exhaustive_width != d.exhaustive_width) out << "exhaustive_width = " << c.exhaustive_width << '\n';
  if (!c.ys.empty()) out << "ys = " << reals(c.ys) << '\n';
  if (!c.zs.empty()) out << "zs = " << reals(c.zs) << '\n';
  if (c.epsilon != d.epsilon) out << "epsilon = " << format_real(c.epsilon) << '\n';
  if (c.walk_steps != d.walk_steps) out << "walk_steps = " << c.walk_steps << '\n';
  if (c.increment_p != d.increment_p) out << "increment_p = " << format_real(c.increment_p) << '\n';
  if (c.sample_length != d.sample_length) out << "sample_length = " << c.sample_length << '\n';
  if (c.lag != d.lag) out << "lag = " << c.lag << '\n';
  return out.str();
}

std::string config_digest(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize_config(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string version_string() { return GLIDERS_VERSION; }

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << content;
  f.flush();
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

void report_cdf(const EmpiricalCDF& cdf, std::ostream& summary) {
  const auto theory = cdf.theoretical();
  for (std::size_t i = 0; i < cdf.xs.size(); ++i)
    summary << "x=" << format_g6(cdf.xs[i]) << " empirical=" << format_g6(cdf.estimates[i])
            << " theoretical=" << format_g6(theory[i])
            << " |diff|=" << format_g6(std::abs(cdf.estimates[i] - theory[i]))
            << " stderr=" << format_g6(cdf.standard_errors[i]) << '\n';
}

EmpiricalCDF cdf_experiment(const ExperimentConfig& c, const RunOptions& options) {
  const Index horizon = c.horizon.value_or(horizon_for(c.n, c.xs));
  if (c.command == Command::entrytime) {
    const GlidersRule rule(c.rule->first, c.rule->second);
    const SamplerSpec sampler = build_sampler(c.sampler, kGlidersAlphabet, true, c.seed);
    const WindowSource source = [&](std::uint64_t trial, Index lo, std::span<State> out) {
      sampler.sample_into(lo, trial, out);
    };
    const auto times = sample_entry_times(source, rule, c.n, horizon, c.side, c.trials, options);
    return tabulate_cdf(times, c.xs, c.n, rule, c.side, sampler.digest());
  }
  const FactorSpec factor = factor_by_name(c.factor);
  const SamplerSpec sampler =
      build_sampler(c.sampler, factor.source_rule.alphabet_size(), false, c.seed);
  const std::size_t extra = static_cast<std::size_t>(factor.sft.order() - 1);
  const WindowSource source = [&](std::uint64_t trial, Index lo, std::span<State> out) {
    thread_local std::vector<State> buffer;
    buffer.resize(out.size() + extra);
    sampler.sample_into(lo, trial, buffer);
    const auto r = static_cast<std::size_t>(factor.sft.order());
    for (std::size_t j = 0; j < out.size(); ++j)
      out[j] = encode_sign(factor.sft.classify(std::span<const State>(buffer).subspan(j, r)));
  };
  const auto times = sample_entry_times(source, factor.target, c.n, horizon, c.side, c.trials, options);
  EmpiricalCDF cdf = tabulate_cdf(times, c.xs, c.n, factor.target, c.side, sampler.digest());
  cdf.factor_name = factor.name;
  return cdf;
}

std::string cells_text(const ConfigurationWindow& w) {
  std::string s;
  for (State c : w.cells()) s += std::to_string(c);
  return s;
}

void dispatch(const ExperimentConfig& c, std::ostream& summary) {
  const fs::path out_dir(c.out);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " + ec.message());
  RunOptions options;
  options.workers = c.workers;

  switch (c.command) {
    case Command::simulate: {
      const bool lifted = !c.factor.empty();
      const LocalRule rule = lifted ? factor_by_name(c.factor).source_rule
                                    : make_local_rule(GlidersRule(c.rule->first, c.rule->second));
      const SamplerSpec sampler = build_sampler(c.sampler, rule.alphabet_size(), !lifted, c.seed);
      const Index margin = static_cast<Index>(rule.radius()) * c.steps;
      const auto initial = sample_window(sampler, -margin, c.width - 1 + margin, 0);
      const auto diagram = simulate(initial, rule, c.steps);
      write_file(out_dir / "diagram.pgm", render_pgm(diagram));
      write_file(out_dir / "diagram.txt", render_ascii(diagram));
      summary << "simulate " << rule.name() << ": " << c.width << " cells x " << c.steps
              << " steps -> " << (out_dir / "diagram.pgm").string() << ", "
              << (out_dir / "diagram.txt").string() << '\n';
      break;
    }
    case Command::entrytime:
    case Command::factor_entrytime: {
      const EmpiricalCDF cdf = cdf_experiment(c, options);
      const std::string name = to_string(c.command) + ".csv";
      write_file(out_dir / name, to_csv(cdf));
      report_cdf(cdf, summary);
      break;
    }
    case Command::factor_check: {
      const FactorSpec factor = factor_by_name(c.factor);
      std::ostringstream csv;
      csv << "factor,mode,width,windows_checked,passed,counterexample\n";
      auto emit = [&](const char* mode, Index width, const CommutationReport& r) {
        csv << factor.name << ',' << mode << ',' << width << ',' << r.windows_checked << ','
            << (r.passed ? "true" : "false") << ','
            << (r.counterexample ? cells_text(*r.counterexample) : "") << '\n';
        summary << factor.name << ' ' << mode << " width=" << width
                << " windows=" << r.windows_checked << (r.passed ? " passed" : " FAILED") << '\n';
      };
      if (c.exhaustive_width > 0)
        emit("exhaustive", c.exhaustive_width, commutation_check_exhaustive(factor, c.exhaustive_width));
      if (c.samples > 0)
        emit("random", c.check_width, commutation_check(factor, c.samples, c.check_width, c.seed));
      write_file(out_dir / "factor-check.csv", csv.str());
      break;
    }
    case Command::oracle: {
      std::ostringstream csv;
      write_oracle_csv_header(csv);
      for (std::size_t i = 0; i < c.ys.size(); ++i) {
        const MinimaComparisonParams params{c.ys[i], c.zs[i], c.epsilon};
        const auto est = simulate_minima_comparison(params, c.walk_steps, c.trials, c.seed,
                                                    IncrementSpec::three_point(c.increment_p), options);
        write_oracle_csv_row(csv, params, est);
        const double closed = minima_comparison_probability({params.y, params.z, 0});
        summary << "y=" << format_g6(params.y) << " z=" << format_g6(params.z)
                << " empirical=" << format_g6(est.probability) << " closed_form=" << format_g6(closed)
                << " |diff|=" << format_g6(std::abs(est.probability - closed)) << '\n';
      }
      write_file(out_dir / "oracle.csv", csv.str());
      break;
    }
    case Command::mix_diagnose: {
      MixDiagnostics d;
      if (c.factor.empty()) {
        const SamplerSpec sampler = build_sampler(c.sampler, kGlidersAlphabet, true, c.seed);
        d = estimate_asymptotic_variance(sampler, c.sample_length, c.lag, signed_value);
      } else {
        const FactorSpec factor = factor_by_name(c.factor);
        const SamplerSpec sampler =
            build_sampler(c.sampler, factor.source_rule.alphabet_size(), false, c.seed);
        d = lifted_mix_diagnostics(factor, sampler, c.sample_length, c.lag);
      }
      std::ostringstream csv;
      csv << "mean,asymptotic_variance,standard_variance,stderr,lag,verdict\n"
          << format_g6(d.mean_estimate) << ',' << format_g6(d.asymptotic_variance_estimate) << ','
          << format_g6(d.standard_variance_estimate) << ',' << format_g6(d.standard_error) << ','
          << d.lag_used << ',' << to_string(d.verdict) << '\n';
      write_file(out_dir / "mix-diagnose.csv", csv.str());
      summary << "mean=" << format_g6(d.mean_estimate)
              << " variance=" << format_g6(d.asymptotic_variance_estimate)
              << " standard_variance=" << format_g6(d.standard_variance_estimate)
              << " verdict=" << to_string(d.verdict) << '\n';
      break;
    }
  }
}

}  // namespace

int run(const ExperimentConfig& config, std::ostream& summary, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  log << "gliders " << version_string() << " command=" << to_string(config.command)
      << " config_digest=" << config_digest(config) << " workers=" << config.workers << '\n';
  int status = 0;
  try {
    dispatch(config, summary);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    status = 1;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  log << "wall_time=" << format_g6(seconds) << "s status=" << status << '\n';
  return status;
}

}  // namespace gliders::cli
