#include "gliders/factors.hpp"

#include <algorithm>

#include "gliders/error.hpp"
#include "gliders/rng.hpp"

namespace gliders {

namespace {

std::size_t word_code(std::span<const State> word, int alphabet_size) {
  std::size_t code = 0;
  for (State s : word) code = code * static_cast<std::size_t>(alphabet_size) + s;
  return code;
}

// Width of the exhaustive check run when a built-in factor is constructed.
constexpr int kConstructionCheckWidth = 6;

FactorSpec validated(FactorSpec factor) {
  const auto report = commutation_check_exhaustive(factor, kConstructionCheckWidth);
  if (!report.passed)
    throw ContractError("factor '" + factor.name + "' does not commute with its target rule");
  return factor;
}

LocalRule radius_one_rule(int alphabet_size, std::function<State(State, State, State)> f,
                          std::string name) {
  return LocalRule(
      1, alphabet_size,
      [f = std::move(f)](std::span<const State> w) { return f(w[0], w[1], w[2]); },
      std::move(name));
}

}  // namespace

SftSpec::SftSpec(int alphabet_size, int order, std::set<Word> forbidden_plus,
                 std::set<Word> forbidden_minus)
    : alphabet_size_(alphabet_size),
      order_(order),
      plus_(std::move(forbidden_plus)),
      minus_(std::move(forbidden_minus)) {
  if (alphabet_size_ < 1 || alphabet_size_ > 256) throw ContractError("bad SFT alphabet size");
  if (order_ < 1) throw ContractError("SFT order must be positive");
  std::size_t entries = 1;
  for (int i = 0; i < order_; ++i) {
    entries *= static_cast<std::size_t>(alphabet_size_);
    if (entries > (std::size_t{1} << 24)) throw ContractError("SFT word table too large");
  }
  table_.assign(entries, 0);
  auto add = [&](const std::set<Word>& words, std::int8_t value) {
    for (const auto& w : words) {
      if (static_cast<int>(w.size()) != order_)
        throw ContractError("forbidden word length differs from the SFT order");
      for (State s : w)
        if (s >= alphabet_size_) throw ContractError("forbidden word leaves the alphabet");
      auto& slot = table_[word_code(w, alphabet_size_)];
      if (slot != 0) throw ContractError("a word is both a +1 and a -1 defect");
      slot = value;
    }
  };
  add(plus_, 1);
  add(minus_, -1);
}

int SftSpec::classify(std::span<const State> word) const {
  if (static_cast<int>(word.size()) != order_)
    throw ContractError("classified word length differs from the SFT order");
  return table_[word_code(word, alphabet_size_)];
}

ConfigurationWindow defect_projection(const ConfigurationWindow& config, const SftSpec& sft) {
  if (config.alphabet_size() != sft.alphabet_size())
    throw ContractError("configuration and SFT use different alphabets");
  const std::size_t r = static_cast<std::size_t>(sft.order());
  if (config.size() < r)
    throw ContractError("window of " + std::to_string(config.size()) +
                        " cells is shorter than the SFT order " + std::to_string(r));
  const auto cells = config.cells();
  std::vector<State> out(cells.size() - r + 1);
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = encode_sign(sft.classify(cells.subspan(j, r)));
  return {config.offset(), std::move(out), kGlidersAlphabet};
}

namespace {

bool commutes_with(const FactorSpec& factor, const LocalRule& target,
                   const ConfigurationWindow& window) {
  const auto lhs = defect_projection(step(window, factor.source_rule), factor.sft);
  const auto rhs = step(defect_projection(window, factor.sft), target);
  const Index lo = std::max(lhs.offset(), rhs.offset());
  const Index hi = std::min(lhs.end(), rhs.end());
  if (lo >= hi) throw ContractError("window too narrow to compare both commutation paths");
  for (Index x = lo; x < hi; ++x)
    if (lhs.at(x) != rhs.at(x)) return false;
  return true;
}

}  // namespace

bool commutes_on(const FactorSpec& factor, const ConfigurationWindow& window) {
  return commutes_with(factor, make_local_rule(factor.target), window);
}

CommutationReport commutation_check(const FactorSpec& factor, Index samples, Index width,
                                    std::uint64_t seed) {
  if (width < 1) throw ContractError("commutation window width must be positive");
  const LocalRule target = make_local_rule(factor.target);
  const auto k = static_cast<std::uint64_t>(factor.source_rule.alphabet_size());
  CommutationReport report;
  std::vector<State> cells(static_cast<std::size_t>(width));
  for (Index s = 0; s < samples; ++s) {
    const CounterStream stream(seed, static_cast<std::uint64_t>(s));
    auto cursor = stream.cursor();
    for (auto& c : cells) c = static_cast<State>((cursor.next() * k) >> 32);
    ConfigurationWindow window(0, cells, static_cast<int>(k));
    ++report.windows_checked;
    if (!commutes_with(factor, target, window)) {
      report.passed = false;
      report.counterexample = std::move(window);
      return report;
    }
  }
  return report;
}

CommutationReport commutation_check_exhaustive(const FactorSpec& factor, int width) {
  if (width < 1) throw ContractError("commutation window width must be positive");
  const LocalRule target = make_local_rule(factor.target);
  const int k = factor.source_rule.alphabet_size();
  CommutationReport report;
  std::vector<State> cells(static_cast<std::size_t>(width), 0);
  while (true) {
    ConfigurationWindow window(0, cells, k);
    ++report.windows_checked;
    if (!commutes_with(factor, target, window)) {
      report.passed = false;
      report.counterexample = std::move(window);
      return report;
    }
    std::size_t i = cells.size();
    while (i > 0 && cells[i - 1] == k - 1) cells[--i] = 0;
    if (i == 0) break;
    ++cells[i - 1];
  }
  return report;
}

FactorSpec traffic_factor() {
  auto f = [](State l, State c, State r) -> State {
    return (l == 1 && c == 0) || (c == 1 && r == 1) ? 1 : 0;
  };
  return validated({"traffic", radius_one_rule(2, f, "traffic"),
                    SftSpec(2, 2, {{0, 0}}, {{1, 1}}), GlidersRule(-1, 1)});
}

FactorSpec cyclic3_factor() {
  auto f = [](State l, State c, State r) -> State {
    const State up = static_cast<State>((c + 1) % 3);
    return l == up || r == up ? up : c;
  };
  return validated({"cyclic3", radius_one_rule(3, f, "cyclic3"),
                    SftSpec(3, 2, {{1, 0}, {0, 2}, {2, 1}}, {{0, 1}, {1, 2}, {2, 0}}),
                    GlidersRule(-1, 1)});
}

FactorSpec product_factor() {
  auto f = [](State l, State c, State r) -> State { return static_cast<State>(l & c & r); };
  return validated({"product", radius_one_rule(2, f, "product"),
                    SftSpec(2, 2, {{0, 1}}, {{1, 0}}), GlidersRule(-1, 1)});
}

FactorSpec captive_factor(const CaptiveChoice& choice, int alphabet_size, std::string name) {
  if (!choice) throw ContractError("captive rule needs a choice function");
  if (alphabet_size < 2 || alphabet_size > 16)
    throw ContractError("captive alphabet size must be in [2, 16]");
  std::set<Word> plus, minus;
  for (int a = 0; a < alphabet_size; ++a) {
    for (int b = 0; b < alphabet_size; ++b) {
      const State sa = static_cast<State>(a), sb = static_cast<State>(b);
      const State out = choice(sa, sb);
      if (out != sa && out != sb)
        throw ContractError("captive choice(" + std::to_string(a) + ", " + std::to_string(b) +
                            ") must return one of its arguments");
      if (a == b) continue;
      (out == sa ? plus : minus).insert(Word{sa, sb});
    }
  }
  auto f = [choice](State, State c, State r) { return choice(c, r); };
  return validated({name, radius_one_rule(alphabet_size, f, name),
                    SftSpec(alphabet_size, 2, std::move(plus), std::move(minus)),
                    GlidersRule(-1, 0)});
}

FactorSpec captive_identity_factor(int alphabet_size) {
  return captive_factor([](State a, State) { return a; }, alphabet_size, "captive-identity");
}

FactorSpec captive_shift_factor(int alphabet_size) {
  return captive_factor([](State, State b) { return b; }, alphabet_size, "captive-shift");
}

std::vector<std::string> factor_names() {
  return {"traffic",         "cyclic3",       "product",    "captive-identity",
          "captive-shift",   "captive-min",   "captive-max"};
}

FactorSpec factor_by_name(const std::string& name) {
  if (name == "traffic") return traffic_factor();
  if (name == "cyclic3") return cyclic3_factor();
  if (name == "product") return product_factor();
  if (name == "captive-identity") return captive_identity_factor();
  if (name == "captive-shift") return captive_shift_factor();
  if (name == "captive-min")
    return captive_factor([](State a, State b) { return std::min(a, b); }, 2, name);
  if (name == "captive-max")
    return captive_factor([](State a, State b) { return std::max(a, b); }, 2, name);
  throw ContractError("unknown factor '" + name + "'");
}

namespace {

void project_into(const SftSpec& sft, std::span<const State> source, std::span<State> out) {
  const std::size_t r = static_cast<std::size_t>(sft.order());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = encode_sign(sft.classify(source.subspan(j, r)));
}

}  // namespace

EmpiricalCDF lifted_cdf_experiment(const FactorSpec& factor, const SamplerSpec& sampler, Index n,
                                   std::vector<double> xs, Index trials, Side side,
                                   const RunOptions& options) {
  if (sampler.alphabet_size() != factor.source_rule.alphabet_size())
    throw ContractError("sampler alphabet differs from the factor's source alphabet");
  const Index horizon = horizon_for(n, xs);
  const std::size_t extra = static_cast<std::size_t>(factor.sft.order() - 1);
  const WindowSource source = [&](std::uint64_t trial, Index lo, std::span<State> out) {
    thread_local std::vector<State> buffer;
    buffer.resize(out.size() + extra);
    sampler.sample_into(lo, trial, buffer);
    project_into(factor.sft, buffer, out);
  };
  const auto times = sample_entry_times(source, factor.target, n, horizon, side, trials, options);
  EmpiricalCDF cdf = tabulate_cdf(times, std::move(xs), n, factor.target, side, sampler.digest());
  cdf.factor_name = factor.name;
  return cdf;
}

MixDiagnostics lifted_mix_diagnostics(const FactorSpec& factor, const SamplerSpec& sampler,
                                      Index sample_length, Index lag) {
  if (sampler.alphabet_size() != factor.source_rule.alphabet_size())
    throw ContractError("sampler alphabet differs from the factor's source alphabet");
  if (sample_length <= 0) throw ContractError("sample length must be positive");
  const std::size_t extra = static_cast<std::size_t>(factor.sft.order() - 1);
  std::vector<State> source(static_cast<std::size_t>(sample_length) + extra);
  sampler.sample_into(0, 0, source);
  std::vector<State> projected(static_cast<std::size_t>(sample_length));
  project_into(factor.sft, source, projected);
  std::vector<double> series(projected.size());
  std::transform(projected.begin(), projected.end(), series.begin(), signed_value);
  return diagnose_series(series, lag);
}

}  // namespace gliders
