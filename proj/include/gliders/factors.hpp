#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gliders/ca.hpp"
#include "gliders/entry_time.hpp"
#include "gliders/measures.hpp"

namespace gliders {

using Word = std::vector<State>;

/// Subshift of finite type given by forbidden words of length `order`, split
/// into the words that act as +1 defects and those that act as -1 defects.
class SftSpec {
public:
  SftSpec(int alphabet_size, int order, std::set<Word> forbidden_plus,
          std::set<Word> forbidden_minus);

  int alphabet_size() const { return alphabet_size_; }
  int order() const { return order_; }
  const std::set<Word>& forbidden_plus() const { return plus_; }
  const std::set<Word>& forbidden_minus() const { return minus_; }

  /// p(u): +1 for U+, -1 for U-, 0 for allowed words.
  int classify(std::span<const State> word) const;

private:
  int alphabet_size_;
  int order_;
  std::set<Word> plus_;
  std::set<Word> minus_;
  std::vector<std::int8_t> table_;  // indexed by base-|A| word code
};

/// Output cell j is p(a[j .. j + r - 1]); offset is kept, length shrinks by r - 1.
ConfigurationWindow defect_projection(const ConfigurationWindow& config, const SftSpec& sft);

/// A CA on some alphabet together with the defect factor onto a gliders rule.
struct FactorSpec {
  std::string name;
  LocalRule source_rule;
  SftSpec sft;
  GlidersRule target;
};

struct CommutationReport {
  bool passed = true;
  Index windows_checked = 0;
  std::optional<ConfigurationWindow> counterexample;
};

/// Checks projection(F1(a)) == F2(projection(a)) on the common window of
/// a single source window.
bool commutes_on(const FactorSpec& factor, const ConfigurationWindow& window);

/// Uniform random source windows of the given width.
CommutationReport commutation_check(const FactorSpec& factor, Index samples, Index width,
                                    std::uint64_t seed);

/// Every source window of the given width.
CommutationReport commutation_check_exhaustive(const FactorSpec& factor, int width);

/// Rule 184: f(l, c, r) = 1 if (l = 1 and c = 0) or (c = 1 and r = 1).
/// Checkerboard SFT, U+ = {00}, U- = {11}, target (-1, 1).
FactorSpec traffic_factor();

/// Cyclic CA on Z/3: c + 1 when a neighbour equals c + 1. Monochromatic SFT,
/// U+ = {10, 02, 21}, U- = {01, 12, 20}, target (-1, 1).
FactorSpec cyclic3_factor();

/// f(l, c, r) = l c r on {0, 1}. U+ = {01}, U- = {10}, target (-1, 1).
FactorSpec product_factor();

/// Chooses f(a, b) in {a, b} for the ordered pair of states (a, b).
using CaptiveChoice = std::function<State(State, State)>;

/// One-sided captive CA F(x)_i = choice(x_i, x_{i+1}) with the monochromatic
/// SFT: ab in U+ when choice(a, b) = a (defect stays), U- otherwise (defect
/// moves left). Target (-1, 0).
FactorSpec captive_factor(const CaptiveChoice& choice, int alphabet_size, std::string name);

/// choice(a, b) = a, i.e. F = identity. Only +1 defects.
FactorSpec captive_identity_factor(int alphabet_size = 2);
/// choice(a, b) = b, i.e. F = shift. Only -1 defects.
FactorSpec captive_shift_factor(int alphabet_size = 2);

/// traffic, cyclic3, product, captive-identity, captive-shift, captive-min,
/// captive-max.
FactorSpec factor_by_name(const std::string& name);
std::vector<std::string> factor_names();

/// Entry-time CDF of the projected configuration. Each trial samples the
/// source window covering the dependence cone plus r - 1 cells and projects.
EmpiricalCDF lifted_cdf_experiment(const FactorSpec& factor, const SamplerSpec& sampler, Index n,
                                   std::vector<double> xs, Index trials, Side side = Side::minus,
                                   const RunOptions& options = {});

/// Mix diagnostics of the projected process p(a[k .. k + r - 1]).
MixDiagnostics lifted_mix_diagnostics(const FactorSpec& factor, const SamplerSpec& sampler,
                                      Index sample_length, Index lag);

}  // namespace gliders
