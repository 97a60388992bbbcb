#pragma once

#include <cstdint>
#include <ostream>

#include "gliders/ca.hpp"
#include "gliders/entry_time.hpp"
#include "gliders/rng.hpp"

namespace gliders {

/// Left and right interval lengths of two independent Brownian minima, and
/// the offset applied to the left minimum.
struct MinimaComparisonParams {
  double y = 1;
  double z = 1;
  double epsilon = 0;

  void validate() const;
};

/// P(min_[0,y] B_l < min_[0,z] B_r) = (2/pi) atan(sqrt(y/z)); epsilon must be 0.
double minima_comparison_probability(const MinimaComparisonParams& params);

/// Density of min_[0,1] B for a standard Brownian motion: 2 phi(m) for m <= 0.
double brownian_min_density(double m);

/// Centred three-point increment law (p, 1 - 2p, p) on {-1, 0, +1}.
struct IncrementSpec {
  double p = 0.5;  ///< P(+1) = P(-1)

  static IncrementSpec fair() { return {0.5}; }
  static IncrementSpec three_point(double p) { return {p}; }
  double variance() const { return 2 * p; }
  void validate() const;
};

/// Minimum (including the starting 0) of a walk of `steps` increments drawn
/// from `cursor`.
std::int64_t walk_minimum(CounterStream::Cursor& cursor, Index steps, const IncrementSpec& inc);

struct MinimaEstimate {
  double probability = 0;
  double standard_error = 0;
  Index trials = 0;
  Index walk_steps = 0;
};

/// Discrete-walk surrogate: per trial, walks of ceil(y s) and ceil(z s) steps
/// (s = walk_steps); counts left_min - epsilon sqrt(s) < right_min. Ties count
/// as "not less".
MinimaEstimate simulate_minima_comparison(const MinimaComparisonParams& params, Index walk_steps,
                                          Index trials, std::uint64_t seed,
                                          const IncrementSpec& increments,
                                          const RunOptions& options = {});

/// y,z,epsilon,closed_form,empirical,stderr,walk_steps,trials
void write_oracle_csv_header(std::ostream& out);
void write_oracle_csv_row(std::ostream& out, const MinimaComparisonParams& params,
                          const MinimaEstimate& estimate);

}  // namespace gliders
