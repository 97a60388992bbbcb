#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace gliders {

using State = std::uint8_t;
using Index = std::int64_t;

// Gliders alphabet encoding: -1 -> 0, 0 -> 1, +1 -> 2. All walk arithmetic
// uses the signed value.
constexpr int kGlidersAlphabet = 3;
constexpr State encode_sign(int value) { return static_cast<State>(value + 1); }
constexpr int decode_sign(State state) { return static_cast<int>(state) - 1; }

/// A finite slice [offset, offset + size) of a bi-infinite configuration.
class ConfigurationWindow {
public:
  ConfigurationWindow(Index offset, std::vector<State> cells, int alphabet_size);

  /// Builds a gliders-alphabet window from signed values in {-1, 0, +1}.
  static ConfigurationWindow from_signs(Index offset, std::span<const int> signs);
  static ConfigurationWindow from_signs(Index offset, std::initializer_list<int> signs);

  Index offset() const { return offset_; }
  Index end() const { return offset_ + static_cast<Index>(cells_.size()); }
  std::size_t size() const { return cells_.size(); }
  int alphabet_size() const { return alphabet_size_; }
  std::span<const State> cells() const { return cells_; }

  bool contains(Index x) const { return x >= offset_ && x < end(); }
  State at(Index x) const;

  /// Signed values; only meaningful for the gliders alphabet.
  std::vector<int> signs() const;

  /// Cells on the absolute range [lo, hi).
  ConfigurationWindow slice(Index lo, Index hi) const;

  bool operator==(const ConfigurationWindow&) const = default;

private:
  Index offset_;
  std::vector<State> cells_;
  int alphabet_size_;
};

/// The (v_minus, v_plus) pair of a gliders automaton; v_minus < 0 <= v_plus.
class GlidersRule {
public:
  GlidersRule(int v_minus, int v_plus);

  int v_minus() const { return v_minus_; }
  int v_plus() const { return v_plus_; }
  int radius() const;

  /// Rule seen in a mirror with particle signs exchanged: (-v_plus, -v_minus).
  /// Requires v_plus > 0.
  GlidersRule mirrored() const;

  bool operator==(const GlidersRule&) const = default;

private:
  int v_minus_;
  int v_plus_;
};

/// Local rule f on a symmetric neighbourhood [-radius, radius].
///
/// Rules whose full table has at most kMaxTableEntries entries are tabulated
/// at construction (window read as a base-|A| number, leftmost cell most
/// significant); larger ones evaluate the function directly.
class LocalRule {
public:
  using Function = std::function<State(std::span<const State>)>;
  static constexpr std::size_t kMaxTableEntries = std::size_t{1} << 22;

  LocalRule(int radius, int alphabet_size, Function f, std::string name = {});

  int radius() const { return radius_; }
  int alphabet_size() const { return alphabet_size_; }
  std::size_t window_length() const { return 2 * static_cast<std::size_t>(radius_) + 1; }
  const std::string& name() const { return name_; }
  bool tabulated() const { return !table_.empty(); }

  State apply(std::span<const State> window) const;

  /// Table lookup by window code; only valid when tabulated().
  State lookup(std::size_t code) const { return table_[code]; }

private:
  int radius_;
  int alphabet_size_;
  Function f_;
  std::string name_;
  std::vector<State> table_;
};

/// The three-case gliders local rule on signed values. `window` has length
/// 2 * rule.radius() + 1 and its centre is position 0.
int gliders_local_rule(const GlidersRule& rule, std::span<const int> window);

/// The gliders automaton as a LocalRule on the encoded alphabet.
LocalRule make_local_rule(const GlidersRule& rule);

/// One step with shrinking-window semantics: the result covers
/// [offset + r, end - r).
ConfigurationWindow step(const ConfigurationWindow& config, const LocalRule& rule);

/// Space-time diagram; element t is F^t(config) on its valid window.
std::vector<ConfigurationWindow> simulate(const ConfigurationWindow& config,
                                          const LocalRule& rule, Index steps);

struct Glyphs {
  char minus = '-';
  char zero = '.';
  char plus = '+';
};

/// ASCII diagram cropped to the last row's window. Rows are printed latest
/// time first, so time runs from bottom to top. Non-gliders alphabets are
/// drawn with the digits 0-9.
std::string render_ascii(std::span<const ConfigurationWindow> diagram, Glyphs glyphs = {});

/// Binary PGM (P5), one pixel per cell, same cropping and row order as
/// render_ascii. Gliders states map to gray 0/128/255 for -1/0/+1; other
/// alphabets are spread evenly over 0..255.
std::string render_pgm(std::span<const ConfigurationWindow> diagram);

}  // namespace gliders
