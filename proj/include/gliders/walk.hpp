#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gliders/ca.hpp"

namespace gliders {

/// Sparse-table range minimum: O(W log W) build, O(1) inclusive queries.
class RangeMin {
public:
  RangeMin() = default;
  explicit RangeMin(std::span<const std::int32_t> values);

  /// Minimum of values[first..last], both inclusive; first <= last.
  std::int32_t min(std::size_t first, std::size_t last) const;
  std::size_t size() const { return levels_.empty() ? 0 : levels_.front().size(); }

private:
  std::vector<std::vector<std::int32_t>> levels_;
};

/// Partial-sum walk M on the integer domain [lo, hi] with M(0) = 0 and
/// unit-bounded increments. Immutable; the range-minimum index is built
/// eagerly.
class WalkPath {
public:
  WalkPath(Index lo, std::vector<std::int32_t> values);

  Index lo() const { return lo_; }
  Index hi() const { return lo_ + static_cast<Index>(values_.size()) - 1; }
  bool covers(Index p, Index q) const { return p >= lo_ && q <= hi(); }

  std::int32_t at(Index k) const;
  std::int32_t operator()(Index k) const { return values_[static_cast<std::size_t>(k - lo_)]; }

  /// min of M over {p, ..., q}; an empty set (p > q) is rejected.
  std::int32_t min(Index p, Index q) const;

  std::span<const std::int32_t> values() const { return values_; }

  /// Walk of the configuration b with b_x = -a_{c-x}, c = pivot - 1:
  /// M_b(k) = M_a(pivot - k) - M_a(pivot).
  WalkPath mirrored(Index pivot) const;

private:
  Index lo_;
  std::vector<std::int32_t> values_;
  RangeMin rmq_;
};

/// M_a over [offset, offset + size] for a gliders window containing 0.
WalkPath partial_sums(const ConfigurationWindow& config);

/// F^k(a)_j read off the walk through the strict-minimum characterisation:
///   -1 iff M(j - v_minus*k + 1) < min M over {j - v_plus*k, ..., j - v_minus*k}
///   +1 iff M(j - v_plus*k) < min M over {j - v_plus*k + 1, ..., j - v_minus*k + 1}
int particle_at(const WalkPath& walk, Index j, Index k, const GlidersRule& rule);

/// S(n t) / sqrt(n), S the piecewise-affine interpolation of M.
double rescaled_walk(const WalkPath& walk, Index n, double t);

}  // namespace gliders
