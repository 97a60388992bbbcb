#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gliders/ca.hpp"

namespace gliders {

enum class SamplerKind { bernoulli, markov, dirac_periodic };

/// Declarative description of a shift-invariant initial measure.
///
/// Probability vectors are indexed by encoded state, so for the gliders
/// alphabet a Bernoulli vector reads (p(-1), p(0), p(+1)).
class SamplerSpec {
public:
  static SamplerSpec bernoulli(std::vector<double> probabilities, std::uint64_t seed = 0);

  /// Convenience for the gliders alphabet.
  static SamplerSpec gliders_bernoulli(double p_minus, double p_zero, double p_plus,
                                       std::uint64_t seed = 0);

  /// First-order chain. When `stationary` is empty it is solved for.
  static SamplerSpec markov(std::vector<std::vector<double>> matrix,
                            std::vector<double> stationary = {}, std::uint64_t seed = 0);

  /// Periodic configuration: cell x = word[(x + phase) mod |word|], with the
  /// phase drawn uniformly per trial when `uniform_phase` is set and 0 otherwise.
  static SamplerSpec dirac_periodic(std::vector<State> word, int alphabet_size,
                                    bool uniform_phase, std::uint64_t seed = 0);

  SamplerKind kind() const { return kind_; }
  int alphabet_size() const { return alphabet_size_; }
  std::uint64_t seed() const { return seed_; }
  SamplerSpec with_seed(std::uint64_t seed) const;

  const std::vector<double>& probabilities() const { return probabilities_; }
  const std::vector<std::vector<double>>& matrix() const { return matrix_; }
  const std::vector<double>& stationary() const { return stationary_; }
  const std::vector<State>& word() const { return word_; }
  bool uniform_phase() const { return uniform_phase_; }

  /// One-cell marginal (Bernoulli vector, stationary vector or word frequencies).
  std::vector<double> marginal() const;

  /// Canonical text form, e.g. "bernoulli(0.5,0,0.5);seed=1".
  std::string describe() const;
  /// 16 hex digits of FNV-1a over describe().
  std::string digest() const;

  /// Fills out[i] with cell lo + i. Deterministic in (spec, lo, trial).
  void sample_into(Index lo, std::uint64_t trial, std::span<State> out) const;

private:
  SamplerSpec() = default;
  void build_thresholds();

  SamplerKind kind_ = SamplerKind::bernoulli;
  int alphabet_size_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<double> probabilities_;
  std::vector<std::vector<double>> matrix_;
  std::vector<double> stationary_;
  std::vector<State> word_;
  bool uniform_phase_ = false;

  // Cumulative 32-bit thresholds: state s is drawn when u < cut[s].
  std::vector<std::uint64_t> cut_;
  std::vector<std::vector<std::uint64_t>> row_cut_;
};

/// Cells on [lo, hi] (inclusive) for the given trial.
ConfigurationWindow sample_window(const SamplerSpec& spec, Index lo, Index hi,
                                  std::uint64_t trial_id);

enum class MixVerdict { plausible_member, mean_nonzero, variance_zero };

std::string to_string(MixVerdict verdict);

/// Mean and asymptotic-variance diagnostics for membership in the class of
/// centred, non-degenerate mixing measures.
///
/// asymptotic_variance_estimate is the literal truncated sum
///   c_0 + sum_{k=1..lag} c_k
/// with empirical autocovariances c_k. standard_variance_estimate is the
/// usual long-run variance c_0 + 2 sum_k w_k c_k with Bartlett weights
/// w_k = 1 - k / (lag + 1); only it vanishes for bounded walks, so the verdict
/// is based on it:
///   mean_nonzero  if |mean| > 4 * standard_error,
///   variance_zero else if standard_variance_estimate < max(kVarianceFloor, 2 / (lag + 1)) * c_0
///     (the Bartlett weights leave up to c_0 / (lag + 1) on a bounded walk),
///   plausible_member otherwise.
/// standard_error = sqrt(max(standard, kVarianceFloor * c_0) / length).
struct MixDiagnostics {
  static constexpr double kVarianceFloor = 0.01;

  double mean_estimate = 0;
  double asymptotic_variance_estimate = 0;
  double standard_variance_estimate = 0;
  double standard_error = 0;
  Index lag_used = 0;
  MixVerdict verdict = MixVerdict::plausible_member;
};

MixDiagnostics diagnose_series(std::span<const double> series, Index lag);

MixDiagnostics estimate_asymptotic_variance(const SamplerSpec& spec, Index sample_length, Index lag,
                                            const std::function<double(State)>& projection);

/// Identity projection of the gliders alphabet onto its signed value.
double signed_value(State s);

}  // namespace gliders
