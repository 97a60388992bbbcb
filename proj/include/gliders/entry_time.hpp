#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "gliders/ca.hpp"
#include "gliders/measures.hpp"
#include "gliders/walk.hpp"

namespace gliders {

enum class Side { minus, plus };

std::string to_string(Side side);
Side parse_side(const std::string& text);

/// T_n(a) for one side, or "exceeds horizon" when no particle of that sign
/// reaches the origin window during times n..n+horizon.
struct EntryTimeResult {
  std::optional<Index> value;
  Index horizon = 0;
  Index n = 0;
  Side side = Side::minus;

  bool exceeds_horizon() const { return !value.has_value(); }
};

struct IndexRange {
  Index lo;
  Index hi;  // inclusive
};

/// Walk domain entry_time() reads. For the minus side this is
/// [min(0, -v_plus (n+K)), -v_minus (n+K) + |v_minus|]; the plus side is its
/// mirror image.
IndexRange entry_walk_domain(const GlidersRule& rule, Index n, Index horizon, Side side);

/// Cells that determine the entry time (walk domain minus its last point).
IndexRange entry_cell_window(const GlidersRule& rule, Index n, Index horizon, Side side);

/// Entry time read off the walk with range-minimum queries.
///
/// minus: smallest k <= horizon with some i in [0, |v_minus|) such that
/// F^{n+k}(a)_i = -1. plus: same with +1 and i in [0, v_plus), evaluated by
/// mirroring the walk and running the minus side on (-v_plus, -v_minus).
EntryTimeResult entry_time(const WalkPath& walk, const GlidersRule& rule, Index n, Index horizon,
                           Side side);

/// Reference implementation: iterates the automaton on a zero-padded copy of
/// `config` and watches the origin window directly.
EntryTimeResult entry_time_by_simulation(const ConfigurationWindow& config,
                                         const GlidersRule& rule, Index n, Index horizon,
                                         Side side);

/// Entry time on a raw walk array for the minus side, using one running
/// minimum per window cell instead of a range-minimum index. `walk[i]` holds
/// M(walk_lo + i). Returns -1 when beyond the horizon.
Index scan_entry_time(std::span<const std::int32_t> walk, Index walk_lo, const GlidersRule& rule,
                      Index n, Index horizon);

/// Limit law of T_n / n:
///   minus: (2/pi) atan(sqrt(-v_minus x / (v_plus - v_minus + v_plus x)))
///   plus:  (2/pi) atan(sqrt( v_plus x / (v_plus - v_minus - v_minus x)))
double theoretical_cdf(const GlidersRule& rule, double x, Side side = Side::minus);

enum class Kernel {
  parallel_scan,     ///< OpenMP over trials, running-minimum scan
  serial_reference,  ///< one thread, WalkPath + range-minimum queries
};

struct RunOptions {
  int workers = 1;
  Kernel kernel = Kernel::parallel_scan;
};

/// Writes gliders-encoded cells lo, lo + 1, ... of one trial's configuration.
using WindowSource = std::function<void(std::uint64_t trial, Index lo, std::span<State> out)>;

/// Entry time of every trial in [0, trials), -1 meaning beyond the horizon.
/// The result depends only on the source, never on workers or kernel.
std::vector<Index> sample_entry_times(const WindowSource& source, const GlidersRule& rule,
                                      Index n, Index horizon, Side side, Index trials,
                                      const RunOptions& options = {});

/// Monte Carlo estimate of P(T_n / n <= x) on a grid.
struct EmpiricalCDF {
  std::vector<double> xs;
  std::vector<double> estimates;
  std::vector<double> standard_errors;
  Index trials = 0;
  Index n = 0;
  GlidersRule rule{-1, 0};
  Side side = Side::minus;
  std::string sampler_digest;
  std::string factor_name;  // empty for plain gliders experiments

  std::vector<double> theoretical() const;
};

/// Horizon K = ceil(n * max(xs)); the CDF on the grid does not see T > K.
Index horizon_for(Index n, std::span<const double> xs);

EmpiricalCDF tabulate_cdf(std::span<const Index> times, std::vector<double> xs, Index n,
                          const GlidersRule& rule, Side side, std::string sampler_digest);

EmpiricalCDF run_cdf_experiment(const SamplerSpec& sampler, const GlidersRule& rule, Index n,
                                std::vector<double> xs, Index trials, Side side = Side::minus,
                                const RunOptions& options = {});

struct BirkhoffEstimates {
  double plus_exceeds_fraction = 0;  ///< fraction with T+ beyond the horizon
  double minus_within_fraction = 0;  ///< fraction with T- / n <= x
  Index trials = 0;
};

/// For a marginal with p(-1) > p(+1): both fractions tend to 1.
BirkhoffEstimates birkhoff_asymmetry_check(const SamplerSpec& sampler, const GlidersRule& rule,
                                           Index n, double x, Index trials,
                                           const RunOptions& options = {});

/// CSV with header
/// x,empirical,theoretical,stderr,trials,n,v_minus,v_plus,side,sampler_digest
/// plus a trailing factor_name column when the CDF carries one.
void write_csv(std::ostream& out, const EmpiricalCDF& cdf);
std::string to_csv(const EmpiricalCDF& cdf);

/// printf("%.6g") of a value, the CSV float format.
std::string format_g6(double value);

}  // namespace gliders
