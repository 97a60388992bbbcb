#include <set>

#include "doctest.h"
#include "gliders/rng.hpp"

using namespace gliders;

TEST_CASE("philox known answers") {
  using C = Philox4x32::Counter;
  CHECK(Philox4x32::block({0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("stream words are positional") {
  const CounterStream s(42, 7);
  auto cur = s.cursor(5);
  for (std::uint64_t i = 5; i < 40; ++i) CHECK(cur.next() == s.word(i));
  const CounterStream again(42, 7);
  CHECK(again.word(1000) == s.word(1000));
  CHECK(CounterStream(42, 8).word(0) != s.word(0));
  CHECK(CounterStream(43, 7).word(0) != s.word(0));
  CHECK(s.word(~std::uint64_t{0}) == s.word(~std::uint64_t{0}));
}

TEST_CASE("uniforms lie in [0, 1) and look uniform") {
  auto cur = CounterStream(1, 0).cursor();
  double sum = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = cur.next_uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}
