#include "gliders/walk.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>

#include "gliders/error.hpp"

namespace gliders {

RangeMin::RangeMin(std::span<const std::int32_t> values) {
  if (values.empty()) return;
  levels_.emplace_back(values.begin(), values.end());
  for (std::size_t width = 2; width <= values.size(); width *= 2) {
    const auto& prev = levels_.back();
    const std::size_t half = width / 2;
    std::vector<std::int32_t> next(values.size() - width + 1);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = std::min(prev[i], prev[i + half]);
    levels_.push_back(std::move(next));
  }
}

std::int32_t RangeMin::min(std::size_t first, std::size_t last) const {
  const std::size_t level = std::bit_width(last - first + 1) - 1;
  const auto& row = levels_[level];
  return std::min(row[first], row[last + 1 - (std::size_t{1} << level)]);
}

WalkPath::WalkPath(Index lo, std::vector<std::int32_t> values)
    : lo_(lo), values_(std::move(values)) {
  if (values_.empty()) throw ContractError("walk needs at least one value");
  if (lo_ > 0 || hi() < 0) throw ContractError("walk domain must contain 0");
  if (at(0) != 0) throw ContractError("walk must satisfy M(0) = 0");
  for (std::size_t i = 0; i + 1 < values_.size(); ++i)
    if (std::abs(values_[i + 1] - values_[i]) > 1)
      throw ContractError("walk increments must lie in {-1, 0, +1}");
  rmq_ = RangeMin(values_);
}

std::int32_t WalkPath::at(Index k) const {
  if (k < lo_ || k > hi())
    throw DomainError("walk index " + std::to_string(k) + " outside [" + std::to_string(lo_) +
                      ", " + std::to_string(hi()) + "]");
  return (*this)(k);
}

std::int32_t WalkPath::min(Index p, Index q) const {
  if (p > q) throw ContractError("empty index set in walk minimum");
  if (!covers(p, q))
    throw DomainError("walk minimum over [" + std::to_string(p) + ", " + std::to_string(q) +
                      "] exceeds domain [" + std::to_string(lo_) + ", " + std::to_string(hi()) +
                      "]");
  return rmq_.min(static_cast<std::size_t>(p - lo_), static_cast<std::size_t>(q - lo_));
}

WalkPath WalkPath::mirrored(Index pivot) const {
  const std::int32_t base = at(pivot);
  const Index new_lo = pivot - hi();
  std::vector<std::int32_t> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = (*this)(pivot - (new_lo + static_cast<Index>(i))) - base;
  return {new_lo, std::move(out)};
}

WalkPath partial_sums(const ConfigurationWindow& config) {
  if (config.alphabet_size() != kGlidersAlphabet)
    throw ContractError("partial sums need a gliders-alphabet window");
  if (!config.contains(0) && config.end() != 0)
    throw DomainError("window [" + std::to_string(config.offset()) + ", " +
                      std::to_string(config.end()) + ") does not contain the anchor 0");
  const auto cells = config.cells();
  std::vector<std::int32_t> values(cells.size() + 1);
  for (std::size_t i = 0; i < cells.size(); ++i) values[i + 1] = values[i] + decode_sign(cells[i]);
  const std::int32_t shift = values[static_cast<std::size_t>(-config.offset())];
  for (auto& v : values) v -= shift;
  return {config.offset(), std::move(values)};
}

int particle_at(const WalkPath& walk, Index j, Index k, const GlidersRule& rule) {
  if (k < 0) throw ContractError("time must be nonnegative");
  const Index left = j - rule.v_plus() * k;
  const Index right = j - rule.v_minus() * k;
  if (!walk.covers(left, right + 1))
    throw DomainError("particle_at(j=" + std::to_string(j) + ", k=" + std::to_string(k) +
                      ") needs walk range [" + std::to_string(left) + ", " +
                      std::to_string(right + 1) + "], have [" + std::to_string(walk.lo()) +
                      ", " + std::to_string(walk.hi()) + "]");
  if (walk(right + 1) < walk.min(left, right)) return -1;
  if (walk(left) < walk.min(left + 1, right + 1)) return 1;
  return 0;
}

double rescaled_walk(const WalkPath& walk, Index n, double t) {
  if (n <= 0) throw ContractError("rescaling factor n must be positive");
  const double s = static_cast<double>(n) * t;
  const double fl = std::floor(s);
  const Index k = static_cast<Index>(fl);
  const double frac = s - fl;
  double value;
  if (frac == 0.0) {
    value = walk.at(k);
  } else {
    if (!walk.covers(k, k + 1))
      throw DomainError("rescaled walk argument " + std::to_string(s) + " outside walk domain");
    value = (1.0 - frac) * walk(k) + frac * walk(k + 1);
  }
  return value / std::sqrt(static_cast<double>(n));
}

}  // namespace gliders
