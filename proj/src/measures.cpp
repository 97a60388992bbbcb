#include "gliders/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "gliders/error.hpp"
#include "gliders/rng.hpp"

namespace gliders {

namespace {

constexpr double kProbabilityTolerance = 1e-12;
constexpr double kStationaryTolerance = 1e-10;
// Stream index reserved for the periodic phase draw; cell indices never reach it.
constexpr std::uint64_t kPhaseWord = std::uint64_t{1} << 63;

void check_probability_vector(const std::vector<double>& p, const char* what) {
  if (p.empty()) throw ContractError(std::string(what) + " is empty");
  double sum = 0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw ContractError(std::string(what) + " has a negative or non-finite entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance)
    throw ContractError(std::string(what) + " sums to " + std::to_string(sum) + ", not 1");
}

std::vector<std::uint64_t> thresholds(const std::vector<double>& p) {
  std::vector<std::uint64_t> cut(p.size());
  double acc = 0;
  for (std::size_t s = 0; s < p.size(); ++s) {
    acc += p[s];
    cut[s] = static_cast<std::uint64_t>(std::llround(std::min(acc, 1.0) * 0x1.0p32));
  }
  // Zero-probability tail states must stay unreachable.
  std::size_t last = p.size();
  while (last > 0 && p[last - 1] == 0.0) --last;
  for (std::size_t s = last == 0 ? 0 : last - 1; s < p.size(); ++s) cut[s] = std::uint64_t{1} << 32;
  return cut;
}

inline State draw(const std::vector<std::uint64_t>& cut, std::uint32_t u) {
  State s = 0;
  while (u >= cut[s]) ++s;
  return s;
}

std::vector<double> solve_stationary(const std::vector<std::vector<double>>& P) {
  const std::size_t k = P.size();
  // Rows 0..k-2 of (P^T - I) x = 0, plus sum(x) = 1.
  std::vector<std::vector<double>> A(k, std::vector<double>(k + 1, 0.0));
  for (std::size_t i = 0; i + 1 < k; ++i)
    for (std::size_t j = 0; j < k; ++j) A[i][j] = P[j][i] - (i == j ? 1.0 : 0.0);
  for (std::size_t j = 0; j < k; ++j) A[k - 1][j] = 1.0;
  A[k - 1][k] = 1.0;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
    if (std::abs(A[pivot][col]) < 1e-14)
      throw ContractError("markov matrix has no unique stationary vector");
    std::swap(A[col], A[pivot]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = A[r][col] / A[col][col];
      for (std::size_t c = col; c <= k; ++c) A[r][c] -= f * A[col][c];
    }
  }
  std::vector<double> x(k);
  for (std::size_t i = 0; i < k; ++i) x[i] = std::max(0.0, A[i][k] / A[i][i]);
  const double sum = std::accumulate(x.begin(), x.end(), 0.0);
  for (auto& v : x) v /= sum;
  return x;
}

std::string format_list(const std::vector<double>& v) {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12g", v[i]);
    if (i) out += ',';
    out += buf;
  }
  return out;
}

}  // namespace

SamplerSpec SamplerSpec::bernoulli(std::vector<double> probabilities, std::uint64_t seed) {
  check_probability_vector(probabilities, "bernoulli probability vector");
  if (probabilities.size() > 256) throw ContractError("alphabet larger than 256 states");
  SamplerSpec s;
  s.kind_ = SamplerKind::bernoulli;
  s.alphabet_size_ = static_cast<int>(probabilities.size());
  s.seed_ = seed;
  s.probabilities_ = std::move(probabilities);
  s.build_thresholds();
  return s;
}

SamplerSpec SamplerSpec::gliders_bernoulli(double p_minus, double p_zero, double p_plus,
                                           std::uint64_t seed) {
  return bernoulli({p_minus, p_zero, p_plus}, seed);
}

SamplerSpec SamplerSpec::markov(std::vector<std::vector<double>> matrix,
                                std::vector<double> stationary, std::uint64_t seed) {
  const std::size_t k = matrix.size();
  if (k == 0 || k > 256) throw ContractError("markov matrix must have 1..256 rows");
  for (const auto& row : matrix) {
    if (row.size() != k) throw ContractError("markov matrix must be square");
    check_probability_vector(row, "markov matrix row");
  }
  if (stationary.empty()) stationary = solve_stationary(matrix);
  if (stationary.size() != k) throw ContractError("stationary vector has the wrong length");
  check_probability_vector(stationary, "stationary vector");
  for (std::size_t j = 0; j < k; ++j) {
    double v = 0;
    for (std::size_t i = 0; i < k; ++i) v += stationary[i] * matrix[i][j];
    if (std::abs(v - stationary[j]) > kStationaryTolerance)
      throw ContractError("stationary vector does not satisfy pi P = pi");
  }
  SamplerSpec s;
  s.kind_ = SamplerKind::markov;
  s.alphabet_size_ = static_cast<int>(k);
  s.seed_ = seed;
  s.matrix_ = std::move(matrix);
  s.stationary_ = std::move(stationary);
  s.build_thresholds();
  return s;
}

SamplerSpec SamplerSpec::dirac_periodic(std::vector<State> word, int alphabet_size,
                                        bool uniform_phase, std::uint64_t seed) {
  if (word.empty()) throw ContractError("periodic word is empty");
  if (alphabet_size < 1 || alphabet_size > 256) throw ContractError("bad alphabet size");
  for (State c : word)
    if (c >= alphabet_size) throw ContractError("periodic word leaves the alphabet");
  SamplerSpec s;
  s.kind_ = SamplerKind::dirac_periodic;
  s.alphabet_size_ = alphabet_size;
  s.seed_ = seed;
  s.word_ = std::move(word);
  s.uniform_phase_ = uniform_phase;
  return s;
}

void SamplerSpec::build_thresholds() {
  if (kind_ == SamplerKind::bernoulli) {
    cut_ = thresholds(probabilities_);
  } else if (kind_ == SamplerKind::markov) {
    cut_ = thresholds(stationary_);
    row_cut_.clear();
    for (const auto& row : matrix_) row_cut_.push_back(thresholds(row));
  }
}

SamplerSpec SamplerSpec::with_seed(std::uint64_t seed) const {
  SamplerSpec s = *this;
  s.seed_ = seed;
  return s;
}

std::vector<double> SamplerSpec::marginal() const {
  switch (kind_) {
    case SamplerKind::bernoulli: return probabilities_;
    case SamplerKind::markov: return stationary_;
    case SamplerKind::dirac_periodic: {
      std::vector<double> m(static_cast<std::size_t>(alphabet_size_), 0.0);
      for (State c : word_) m[c] += 1.0 / static_cast<double>(word_.size());
      return m;
    }
  }
  return {};
}

std::string SamplerSpec::describe() const {
  std::string out;
  switch (kind_) {
    case SamplerKind::bernoulli: out = "bernoulli(" + format_list(probabilities_) + ")"; break;
    case SamplerKind::markov: {
      out = "markov(";
      for (std::size_t i = 0; i < matrix_.size(); ++i) {
        if (i) out += ';';
        out += format_list(matrix_[i]);
      }
      out += "|" + format_list(stationary_) + ")";
      break;
    }
    case SamplerKind::dirac_periodic: {
      out = "dirac(";
      for (std::size_t i = 0; i < word_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(word_[i]);
      }
      out += uniform_phase_ ? ";uniform)" : ";fixed)";
      out += "/" + std::to_string(alphabet_size_);
      break;
    }
  }
  return out + ";seed=" + std::to_string(seed_);
}

std::string SamplerSpec::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : describe()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void SamplerSpec::sample_into(Index lo, std::uint64_t trial, std::span<State> out) const {
  if (out.empty()) return;
  const CounterStream stream(seed_, trial);
  switch (kind_) {
    case SamplerKind::bernoulli: {
      auto cursor = stream.cursor(static_cast<std::uint64_t>(lo));
      for (auto& cell : out) cell = draw(cut_, cursor.next());
      break;
    }
    case SamplerKind::markov: {
      auto cursor = stream.cursor(static_cast<std::uint64_t>(lo));
      State prev = draw(cut_, cursor.next());
      out[0] = prev;
      for (std::size_t i = 1; i < out.size(); ++i) {
        prev = draw(row_cut_[prev], cursor.next());
        out[i] = prev;
      }
      break;
    }
    case SamplerKind::dirac_periodic: {
      const Index period = static_cast<Index>(word_.size());
      Index phase = 0;
      if (uniform_phase_)
        phase = static_cast<Index>((static_cast<std::uint64_t>(stream.word(kPhaseWord)) *
                                    static_cast<std::uint64_t>(period)) >> 32);
      Index pos = ((lo + phase) % period + period) % period;
      for (auto& cell : out) {
        cell = word_[static_cast<std::size_t>(pos)];
        if (++pos == period) pos = 0;
      }
      break;
    }
  }
}

ConfigurationWindow sample_window(const SamplerSpec& spec, Index lo, Index hi,
                                  std::uint64_t trial_id) {
  if (lo > hi) throw ContractError("sample_window needs lo <= hi");
  std::vector<State> cells(static_cast<std::size_t>(hi - lo + 1));
  spec.sample_into(lo, trial_id, cells);
  return {lo, std::move(cells), spec.alphabet_size()};
}

std::string to_string(MixVerdict verdict) {
  switch (verdict) {
    case MixVerdict::plausible_member: return "plausible_member";
    case MixVerdict::mean_nonzero: return "mean_nonzero";
    case MixVerdict::variance_zero: return "variance_zero";
  }
  return "?";
}

MixDiagnostics diagnose_series(std::span<const double> series, Index lag) {
  const Index length = static_cast<Index>(series.size());
  if (lag < 0) throw ContractError("lag must be nonnegative");
  if (lag >= length) throw ContractError("lag must be smaller than the sample length");

  MixDiagnostics d;
  d.lag_used = lag;
  d.mean_estimate = std::accumulate(series.begin(), series.end(), 0.0) / length;
  std::vector<double> centred(series.size());
  std::transform(series.begin(), series.end(), centred.begin(),
                 [m = d.mean_estimate](double v) { return v - m; });

  auto autocov = [&](Index k) {
    double acc = 0;
    for (Index i = 0; i + k < length; ++i) acc += centred[i] * centred[i + k];
    return acc / static_cast<double>(length);
  };
  const double c0 = autocov(0);
  double literal = c0;
  double standard = c0;
  for (Index k = 1; k <= lag; ++k) {
    const double ck = autocov(k);
    literal += ck;
    standard += 2.0 * (1.0 - static_cast<double>(k) / static_cast<double>(lag + 1)) * ck;
  }
  d.asymptotic_variance_estimate = literal;
  d.standard_variance_estimate = standard;

  const double floor = MixDiagnostics::kVarianceFloor * c0;
  d.standard_error = std::sqrt(std::max(standard, floor) / static_cast<double>(length));
  if (std::abs(d.mean_estimate) > 4.0 * d.standard_error)
    d.verdict = MixVerdict::mean_nonzero;
  else if (standard < std::max(floor, 2.0 * c0 / static_cast<double>(lag + 1)) || c0 == 0.0)
    d.verdict = MixVerdict::variance_zero;
  else
    d.verdict = MixVerdict::plausible_member;
  return d;
}

MixDiagnostics estimate_asymptotic_variance(const SamplerSpec& spec, Index sample_length, Index lag,
                                            const std::function<double(State)>& projection) {
  if (sample_length <= 0) throw ContractError("sample length must be positive");
  if (lag >= sample_length) throw ContractError("lag must be smaller than the sample length");
  std::vector<State> cells(static_cast<std::size_t>(sample_length));
  spec.sample_into(0, 0, cells);
  std::vector<double> series(cells.size());
  std::transform(cells.begin(), cells.end(), series.begin(), projection);
  return diagnose_series(series, lag);
}

double signed_value(State s) { return static_cast<double>(decode_sign(s)); }

}  // namespace gliders
