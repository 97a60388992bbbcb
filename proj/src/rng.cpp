#include "gliders/rng.hpp"

namespace gliders {

namespace {

constexpr std::uint32_t kMulA = 0xD2511F53;
constexpr std::uint32_t kMulB = 0xCD9E8D57;
constexpr std::uint32_t kWeylA = 0x9E3779B9;
constexpr std::uint32_t kWeylB = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMulA, ctr[0], hi0, lo0);
    mulhilo(kMulB, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeylA;
    key[1] += kWeylB;
  }
  return ctr;
}

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t trial)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      trial_lo_(static_cast<std::uint32_t>(trial)),
      trial_hi_(static_cast<std::uint32_t>(trial >> 32)) {}

Philox4x32::Counter CounterStream::block(std::uint64_t block_index) const {
  return Philox4x32::block({static_cast<std::uint32_t>(block_index),
                            static_cast<std::uint32_t>(block_index >> 32), trial_lo_, trial_hi_},
                           key_);
}

std::uint32_t CounterStream::word(std::uint64_t index) const { return block(index >> 2)[index & 3]; }

namespace {
// Word indices live in Z / 2^64, so block indices wrap modulo 2^62.
constexpr std::uint64_t kBlockMask = (std::uint64_t{1} << 62) - 1;
}  // namespace

CounterStream::Cursor::Cursor(const CounterStream& stream, std::uint64_t index)
    : stream_(&stream), block_(index >> 2), lane_(static_cast<unsigned>(index & 3)) {
  cache_ = stream_->block(block_);
}

std::uint32_t CounterStream::Cursor::next() {
  if (lane_ == 4) {
    block_ = (block_ + 1) & kBlockMask;
    cache_ = stream_->block(block_);
    lane_ = 0;
  }
  return cache_[lane_++];
}

double CounterStream::Cursor::next_uniform() {
  const std::uint64_t hi = next() >> 5;
  const std::uint64_t lo = next() >> 6;
  return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
}

}  // namespace gliders
