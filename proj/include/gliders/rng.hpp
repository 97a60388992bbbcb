#pragma once

#include <array>
#include <cstdint>

namespace gliders {

/// Philox4x32-10 (Salmon et al., SC'11), the counter-based generator used for
/// every random draw in the library.
class Philox4x32 {
public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key);
};

/// Random-access stream of 32-bit words keyed by (seed, trial).
///
/// Word i of the stream is lane (i mod 4) of Philox(counter, key) with
///   counter = {lo32(i / 4), hi32(i / 4), lo32(trial), hi32(trial)}
///   key     = {lo32(seed), hi32(seed)}
/// so distinct trials never share a counter and a cell's draw depends only on
/// (seed, trial, index), never on which worker evaluates it.
class CounterStream {
public:
  CounterStream(std::uint64_t seed, std::uint64_t trial);

  std::uint32_t word(std::uint64_t index) const;

  /// Sequential reader starting at `index`; caches one Philox block.
  class Cursor {
  public:
    Cursor(const CounterStream& stream, std::uint64_t index);
    std::uint32_t next();
    double next_uniform();  // in [0, 1), 53 random bits

  private:
    const CounterStream* stream_;
    std::uint64_t block_;
    unsigned lane_;
    Philox4x32::Counter cache_{};
  };

  Cursor cursor(std::uint64_t index = 0) const { return {*this, index}; }
  Philox4x32::Counter block(std::uint64_t block_index) const;

private:
  Philox4x32::Key key_;
  std::uint32_t trial_lo_;
  std::uint32_t trial_hi_;
};

}  // namespace gliders
